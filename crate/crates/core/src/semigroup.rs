//! Actions of free abelian semigroups `(Z⁺)ᵏ` and of divisible semigroups of
//! positive rationals.
//!
//! A free action is given by commuting generators with one cocycle each.
//! When the compatibility identity
//! `ω_i(x)·ω_j(φ_i(x)) = ω_j(x)·ω_i(φ_j(x))` holds for every pair, the
//! generator cocycles extend to a cocycle for every element `m`.
//!
//! A divisible semigroup is represented by a map resolver `d ↦ φ_d` together
//! with a finite prefix of a fundamental sequence. Everything said about it
//! is checked for the listed elements only.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::ops::Add;

use num_traits::{One, Signed};

use crate::analysis::{csli_verdict, stratify};
use crate::cocycle::{pullback, verify_cocycle, CocycleFn};
use crate::error::{Error, Result};
use crate::function::PiecewiseFunction;
use crate::gallery::DyadicTranslations;
use crate::maps::PiecewiseMonotoneMap;
use crate::rational::{is_integer, Rational};
use crate::space::{Cell, ExtPoint};

/// An element `m = (m₁, …, m_k)` of `(Z⁺)ᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(m: Vec<u32>) -> Self {
        MultiIndex(m)
    }

    pub fn zero(k: usize) -> Self {
        MultiIndex(alloc::vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut m = Self::zero(k);
        m.0[i] = 1;
        m
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|m| = m₁ + ⋯ + m_k`.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Generator steps in the canonical order: all `e₁` steps, then `e₂`, …
    pub fn canonical_steps(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &n)| core::iter::repeat_n(i, n as usize)).collect()
    }

    /// Every multi-index of rank `k` with `|m| ≤ max_norm`.
    pub fn all_up_to(k: usize, max_norm: u32) -> Vec<MultiIndex> {
        fn go(k: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() == k {
                out.push(MultiIndex(prefix.clone()));
                return;
            }
            for n in 0..=budget {
                prefix.push(n);
                go(k, budget - n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(k, max_norm, &mut Vec::new(), &mut out);
        out
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.rank(), rhs.rank(), "multi-indices of different rank");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Commuting CSLI generators, each with a cocycle.
#[derive(Clone, Debug)]
pub struct FreeSemigroupAction {
    cocycles: Vec<CocycleFn>,
}

impl FreeSemigroupAction {
    pub fn new(cocycles: Vec<CocycleFn>) -> Result<Self> {
        let first = cocycles.first().ok_or_else(|| Error::InvalidSemigroup("no generators".into()))?;
        let space = first.map().space();
        for (i, w) in cocycles.iter().enumerate() {
            if w.map().space() != space {
                return Err(Error::SpaceMismatch);
            }
            let v = csli_verdict(w.map())?;
            if !v.is_csli() {
                return Err(Error::InvalidSemigroup(format!("generator {i} is not CSLI: {v:?}")));
            }
        }
        for i in 0..cocycles.len() {
            for j in i + 1..cocycles.len() {
                let (a, b) = (cocycles[i].map(), cocycles[j].map());
                if let Some(x) = a.compose(b)?.first_difference(&b.compose(a)?)? {
                    return Err(Error::InvalidSemigroup(format!("generators {i} and {j} do not commute at {x}")));
                }
            }
        }
        Ok(FreeSemigroupAction { cocycles })
    }

    pub fn rank(&self) -> usize {
        self.cocycles.len()
    }

    pub fn generator(&self, i: usize) -> &PiecewiseMonotoneMap {
        self.cocycles[i].map()
    }

    pub fn cocycle(&self, i: usize) -> &CocycleFn {
        &self.cocycles[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ddag {
    Holds,
    Violated { i: usize, j: usize, at: ExtPoint },
}

impl Ddag {
    pub fn holds(&self) -> bool {
        matches!(self, Ddag::Holds)
    }
}

/// Checks `ω_i·(ω_j∘φ_i) = ω_j·(ω_i∘φ_j)` exactly for every pair `i < j`.
pub fn check_ddag(action: &FreeSemigroupAction) -> Result<Ddag> {
    for (i, w) in action.cocycles.iter().enumerate() {
        let r = verify_cocycle(w)?;
        if !r.passes() {
            return Err(Error::InvalidSemigroup(format!("generator cocycle {i} fails verification: {r:?}")));
        }
    }
    for i in 0..action.rank() {
        for j in i + 1..action.rank() {
            let (wi, wj) = (&action.cocycles[i], &action.cocycles[j]);
            let lhs = wi.weight().mul(&pullback(wj.weight(), wi.map())?)?;
            let rhs = wj.weight().mul(&pullback(wi.weight(), wj.map())?)?;
            if let Some(at) = lhs.first_difference(&rhs)? {
                return Ok(Ddag::Violated { i, j, at });
            }
        }
    }
    Ok(Ddag::Holds)
}

/// A free action whose generator cocycles satisfy the pairwise identity.
#[derive(Clone, Debug)]
pub struct CompatibleAction(FreeSemigroupAction);

impl CompatibleAction {
    pub fn new(action: FreeSemigroupAction) -> Result<Self> {
        match check_ddag(&action)? {
            Ddag::Holds => Ok(CompatibleAction(action)),
            Ddag::Violated { i, j, .. } => Err(Error::DdagViolated { i, j }),
        }
    }

    pub fn action(&self) -> &FreeSemigroupAction {
        &self.0
    }

    /// `Π_t ω_{g_t}(x_t)` along the given generator steps, where
    /// `x_{t+1} = φ_{g_t}(x_t)`.
    pub fn path_product(&self, steps: &[usize], x: &ExtPoint) -> Result<Rational> {
        let mut acc = Rational::one();
        let mut p = x.clone();
        for &g in steps {
            let w = self.0.cocycles.get(g).ok_or_else(|| Error::InvalidSemigroup(format!("no generator {g}")))?;
            acc *= w.eval(&p)?;
            p = w.map().apply(&p)?;
        }
        Ok(acc)
    }

    /// `ω(m, x)` by the canonical factorization.
    pub fn extend_cocycle(&self, m: &MultiIndex, x: &ExtPoint) -> Result<Rational> {
        self.check_rank(m)?;
        self.path_product(&m.canonical_steps(), x)
    }

    /// The whole function `ω(m, ·)` together with `φ_m`.
    pub fn extend_cocycle_fn(&self, m: &MultiIndex) -> Result<CocycleFn> {
        self.check_rank(m)?;
        let space = self.0.generator(0).space();
        let mut phi = PiecewiseMonotoneMap::identity(space);
        let mut weight = PiecewiseFunction::constant(space, Rational::one());
        for g in m.canonical_steps() {
            let w = &self.0.cocycles[g];
            weight = weight.mul(&pullback(w.weight(), &phi)?)?;
            phi = w.map().compose(&phi)?;
        }
        CocycleFn::new(phi, weight)
    }

    fn check_rank(&self, m: &MultiIndex) -> Result<()> {
        if m.rank() == self.0.rank() {
            Ok(())
        } else {
            Err(Error::InvalidSemigroup(format!("index of rank {} for {} generators", m.rank(), self.0.rank())))
        }
    }
}

/// Resolves elements of a semigroup of positive rationals to maps.
pub trait MapFamily {
    fn resolve(&self, d: &Rational) -> Result<PiecewiseMonotoneMap>;
}

impl MapFamily for DyadicTranslations {
    fn resolve(&self, d: &Rational) -> Result<PiecewiseMonotoneMap> {
        self.map(d)
    }
}

/// A family given by an explicit table of elements.
#[derive(Clone, Debug, Default)]
pub struct ExplicitFamily {
    maps: Vec<(Rational, PiecewiseMonotoneMap)>,
}

impl ExplicitFamily {
    pub fn new(maps: Vec<(Rational, PiecewiseMonotoneMap)>) -> Self {
        ExplicitFamily { maps }
    }
}

impl MapFamily for ExplicitFamily {
    fn resolve(&self, d: &Rational) -> Result<PiecewiseMonotoneMap> {
        self.maps
            .iter()
            .find(|(e, _)| e == d)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::ResolverGap(format!("no map for {d}")))
    }
}

/// A finite prefix `d₁, d₂, …` with `d_k = n_k·d_{k+1}` and integers `n_k > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSequence {
    elements: Vec<Rational>,
    multipliers: Vec<Rational>,
}

impl FundamentalSequence {
    pub fn new(elements: Vec<Rational>) -> Result<Self> {
        if elements.is_empty() || elements.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidSequence("elements must be positive and nonempty".into()));
        }
        let mut multipliers = Vec::new();
        for w in elements.windows(2) {
            let n = &w[0] / &w[1];
            if !is_integer(&n) || n <= Rational::one() {
                return Err(Error::InvalidSequence(format!("{} / {} = {n} is not an integer above 1", w[0], w[1])));
            }
            multipliers.push(n);
        }
        Ok(FundamentalSequence { elements, multipliers })
    }

    /// `d, d/n, d/n², …` with `len` terms.
    pub fn geometric(d: Rational, n: u32, len: usize) -> Result<Self> {
        let n = Rational::from_integer(n.into());
        let mut elements = Vec::with_capacity(len);
        let mut cur = d;
        for _ in 0..len {
            elements.push(cur.clone());
            cur /= &n;
        }
        Self::new(elements)
    }

    pub fn elements(&self) -> &[Rational] {
        &self.elements
    }

    pub fn multipliers(&self) -> &[Rational] {
        &self.multipliers
    }

    /// Whether `x` is a positive integer multiple of some listed element.
    pub fn covers(&self, x: &Rational) -> bool {
        x.is_positive() && self.elements.iter().any(|d| is_integer(&(x / d)))
    }
}

/// A divisible semigroup: a resolver plus a fundamental sequence prefix.
pub struct DivisibleFamily<R: MapFamily> {
    pub sequence: FundamentalSequence,
    pub resolver: R,
}

impl<R: MapFamily> DivisibleFamily<R> {
    pub fn new(sequence: FundamentalSequence, resolver: R) -> Self {
        DivisibleFamily { sequence, resolver }
    }

    fn prefix(&self, depth: usize) -> Result<&[Rational]> {
        self.sequence.elements.get(..depth).ok_or_else(|| {
            Error::InvalidSequence(format!(
                "depth {depth} exceeds the {} listed elements",
                self.sequence.elements.len()
            ))
        })
    }

    /// Positive integer combinations `d_i + d_j` of the first `depth` elements.
    pub fn pairwise_sums(&self, depth: usize) -> Result<Vec<Rational>> {
        let p = self.prefix(depth)?;
        let mut out = BTreeSet::new();
        for i in 0..p.len() {
            for j in i..p.len() {
                out.insert(&p[i] + &p[j]);
            }
        }
        Ok(out.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    AllHomeo,
    NoneHomeo,
    /// Some tested maps are injective and others are not.
    Inconsistent {
        injective: Vec<Rational>,
        not_injective: Vec<Rational>,
    },
}

/// Whether `φ` is a bijection: every fibre has exactly one point.
pub fn is_injective(map: &PiecewiseMonotoneMap) -> Result<bool> {
    Ok(stratify(map)?.max_multiplicity == 1)
}

/// Tests injectivity of `φ_{d_k}` for the first `depth` elements.
pub fn check_dichotomy<R: MapFamily>(family: &DivisibleFamily<R>, depth: usize) -> Result<Dichotomy> {
    let mut injective = Vec::new();
    let mut not_injective = Vec::new();
    for d in family.prefix(depth)? {
        if is_injective(&family.resolver.resolve(d)?)? {
            injective.push(d.clone());
        } else {
            not_injective.push(d.clone());
        }
    }
    Ok(match (injective.is_empty(), not_injective.is_empty()) {
        (_, true) => Dichotomy::AllHomeo,
        (true, false) => Dichotomy::NoneHomeo,
        (false, false) => Dichotomy::Inconsistent { injective, not_injective },
    })
}

/// Two distinct points that every tested element maps to the same point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionCertificate {
    pub u0: ExtPoint,
    pub v0: ExtPoint,
    pub tested: Vec<Rational>,
}

/// Searches the fibres of `φ_{d_depth}` for a pair identified by every
/// `φ_{d_j}`, `j ≤ depth`, and by `composites`. Among the pairs found, the one
/// identified by the most of the next (at most three) listed elements wins;
/// ties go to the smaller pair.
pub fn find_collision<R: MapFamily>(
    family: &DivisibleFamily<R>,
    depth: usize,
    composites: &[Rational],
) -> Result<Option<CollisionCertificate>> {
    if depth == 0 {
        return Err(Error::InvalidSequence("depth must be positive".into()));
    }
    let prefix = family.prefix(depth)?;
    let mut tested: Vec<Rational> = prefix.to_vec();
    tested.extend(composites.iter().cloned());
    let maps = tested.iter().map(|d| family.resolver.resolve(d)).collect::<Result<Vec<_>>>()?;
    let probes = family.sequence.elements[depth..].iter().take(3).collect::<Vec<_>>();
    let probe_maps = probes.iter().map(|d| family.resolver.resolve(d)).collect::<Result<Vec<_>>>()?;

    let finest = &maps[depth - 1];
    let complex = crate::analysis::CellComplex::build(finest, &[], &[])?;
    let mut best: Option<(usize, ExtPoint, ExtPoint)> = None;
    for t in &complex.target {
        if t.multiplicity() < 2 || !t.cell.is_point() {
            continue;
        }
        let points: Vec<ExtPoint> = t
            .preimages
            .iter()
            .filter_map(|&s| match &complex.source[s].cell {
                Cell::Point(p) => Some(p.clone()),
                Cell::Open { .. } => None,
            })
            .collect();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let (u, v) = (&points[a], &points[b]);
                if !identified_by_all(&maps, u, v)? {
                    continue;
                }
                let mut score = 0;
                for m in &probe_maps {
                    if m.apply(u)? == m.apply(v)? {
                        score += 1;
                    }
                }
                let better = match &best {
                    None => true,
                    Some((s, bu, bv)) => score > *s || (score == *s && (u, v) < (bu, bv)),
                };
                if better {
                    best = Some((score, u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(best.map(|(_, u0, v0)| CollisionCertificate { u0, v0, tested }))
}

fn identified_by_all(maps: &[PiecewiseMonotoneMap], u: &ExtPoint, v: &ExtPoint) -> Result<bool> {
    for m in maps {
        if m.apply(u)? != m.apply(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The tested elements fail to separate the certificate's pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationViolated {
    pub u0: ExtPoint,
    pub v0: ExtPoint,
    /// `φ_d(u₀)` for each tested `d`.
    pub images: Vec<(Rational, ExtPoint)>,
}

/// Validates a collision certificate by direct application.
pub fn check_separation<R: MapFamily>(
    family: &DivisibleFamily<R>,
    cert: &CollisionCertificate,
) -> Result<SeparationViolated> {
    if cert.u0 == cert.v0 {
        return Err(Error::InvalidCertificate("u0 and v0 coincide".into()));
    }
    if cert.tested.is_empty() {
        return Err(Error::InvalidCertificate("no tested elements".into()));
    }
    let mut images = Vec::new();
    for d in &cert.tested {
        let m = family.resolver.resolve(d)?;
        let (a, b) = (m.apply(&cert.u0)?, m.apply(&cert.v0)?);
        if a != b {
            return Err(Error::InvalidCertificate(format!("φ_{d} separates them: {a} vs {b}")));
        }
        images.push((d.clone(), a));
    }
    Ok(SeparationViolated { u0: cert.u0.clone(), v0: cert.v0.clone(), images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{X1, X2, X3};
    use crate::maps::Piece;
    use crate::poly::Poly;
    use crate::rational::{int, rat};
    use crate::space::{Component, ComponentId, Coord, CutSpec, OrderInterval, OrderedCutSpace};
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn translation_cocycle(fam: &DyadicTranslations, d: &Rational) -> CocycleFn {
        CocycleFn::new(fam.map(d).unwrap(), fam.cocycle(d).unwrap()).unwrap()
    }

    fn two_translations() -> CompatibleAction {
        let fam = DyadicTranslations::new();
        let gens = vec![translation_cocycle(&fam, &rat(1, 2)), translation_cocycle(&fam, &rat(1, 4))];
        CompatibleAction::new(FreeSemigroupAction::new(gens).unwrap()).unwrap()
    }

    /// The translations `x ↦ x + d` of the extended line without cuts.
    struct PlainTranslations(OrderedCutSpace);

    impl PlainTranslations {
        fn new() -> Self {
            PlainTranslations(
                OrderedCutSpace::new(vec![Component::new(
                    ComponentId(0),
                    Coord::NegInf,
                    Coord::PosInf,
                    CutSpec::none(),
                )])
                .unwrap(),
            )
        }
    }

    impl MapFamily for PlainTranslations {
        fn resolve(&self, d: &Rational) -> Result<PiecewiseMonotoneMap> {
            let dom = OrderInterval::closed(ComponentId(0), Coord::NegInf, Coord::PosInf);
            PiecewiseMonotoneMap::new(
                self.0.clone(),
                vec![Piece::new(dom, ComponentId(0), int(1), d.clone())],
                BTreeMap::new(),
            )
        }
    }

    fn samples() -> Vec<ExtPoint> {
        let mut out = Vec::new();
        for c in [X1, X2, X3] {
            for v in [rat(-3, 2), rat(-5, 8), rat(-1, 4), rat(-1, 16), rat(1, 3), rat(7, 4)] {
                for coord in [Coord::interior(v.clone()), Coord::minus(v.clone()), Coord::plus(v.clone())] {
                    let p = ExtPoint::new(c, coord);
                    if DyadicTranslations::new().space().contains(&p) {
                        out.push(p);
                    }
                }
            }
            for coord in [Coord::minus(int(0)), Coord::plus(int(0))] {
                let p = ExtPoint::new(c, coord);
                if DyadicTranslations::new().space().contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn interleavings(m: &[u32]) -> Vec<Vec<usize>> {
        if m.iter().all(|&n| n == 0) {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..m.len() {
            if m[i] > 0 {
                let mut rest = m.to_vec();
                rest[i] -= 1;
                for mut tail in interleavings(&rest) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(MultiIndex::all_up_to(2, 4).len(), 15);
        let m = &MultiIndex::new(vec![2, 1]) + &MultiIndex::unit(2, 1);
        assert_eq!(m.norm(), 4);
        assert_eq!(m.canonical_steps(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn identity_generators_are_compatible() {
        let sp = DyadicTranslations::new().space().clone();
        let id = PiecewiseMonotoneMap::identity(&sp);
        let one = PiecewiseFunction::constant(&sp, int(1));
        let w = CocycleFn::new(id, one).unwrap();
        let a = FreeSemigroupAction::new(vec![w.clone(), w]).unwrap();
        assert!(check_ddag(&a).unwrap().holds());
    }

    #[test]
    fn uneven_split_breaks_compatibility() {
        let fam = DyadicTranslations::new();
        let d = rat(1, 2);
        let spans = vec![
            (OrderInterval::closed(X1, Coord::plus(int(0)), Coord::PosInf), Poly::one()),
            (OrderInterval::closed(X2, Coord::NegInf, Coord::minus(-d.clone())), Poly::one()),
            (OrderInterval::closed(X2, Coord::plus(-d.clone()), Coord::minus(int(0))), Poly::constant(rat(3, 4))),
            (OrderInterval::closed(X3, Coord::NegInf, Coord::minus(-d.clone())), Poly::one()),
            (OrderInterval::closed(X3, Coord::plus(-d.clone()), Coord::minus(int(0))), Poly::constant(rat(1, 4))),
        ];
        let skewed =
            CocycleFn::new(fam.map(&d).unwrap(), PiecewiseFunction::from_spans(fam.space(), spans).unwrap()).unwrap();
        assert!(verify_cocycle(&skewed).unwrap().passes());
        let other = translation_cocycle(&fam, &rat(1, 4));
        let a = FreeSemigroupAction::new(vec![skewed.clone(), other.clone()]).unwrap();
        let Ddag::Violated { i: 0, j: 1, at } = check_ddag(&a).unwrap() else { panic!("expected a violation") };
        let lhs = skewed.eval(&at).unwrap() * other.eval(&skewed.map().apply(&at).unwrap()).unwrap();
        let rhs = other.eval(&at).unwrap() * skewed.eval(&other.map().apply(&at).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
        assert!(matches!(CompatibleAction::new(a), Err(Error::DdagViolated { i: 0, j: 1 })));
    }

    #[test]
    fn extension_base_cases() {
        let act = two_translations();
        for x in samples() {
            assert_eq!(act.extend_cocycle(&MultiIndex::zero(2), &x).unwrap(), int(1));
            let (w0, w1) = (act.action().cocycle(0), act.action().cocycle(1));
            let expect = w0.eval(&x).unwrap() * w1.eval(&w0.map().apply(&x).unwrap()).unwrap();
            assert_eq!(act.extend_cocycle(&MultiIndex::new(vec![1, 1]), &x).unwrap(), expect);
        }
    }

    #[test]
    fn extension_is_path_independent() {
        let act = two_translations();
        for m in MultiIndex::all_up_to(2, 3) {
            let paths = interleavings(m.entries());
            for x in samples() {
                let v = act.extend_cocycle(&m, &x).unwrap();
                for p in &paths {
                    assert_eq!(act.path_product(p, &x).unwrap(), v, "m={m:?} x={x} path={p:?}");
                }
            }
        }
    }

    #[test]
    fn extended_functions_are_cocycles() {
        let act = two_translations();
        for m in MultiIndex::all_up_to(2, 2) {
            let w = act.extend_cocycle_fn(&m).unwrap();
            assert!(verify_cocycle(&w).unwrap().passes(), "m={m:?}");
            for x in samples() {
                assert_eq!(w.eval(&x).unwrap(), act.extend_cocycle(&m, &x).unwrap());
            }
        }
    }

    #[test]
    fn fundamental_sequence_validation() {
        let f = FundamentalSequence::geometric(int(1), 2, 4).unwrap();
        assert_eq!(f.elements()[3], rat(1, 8));
        assert!(f.covers(&rat(3, 4)));
        assert!(!f.covers(&rat(1, 3)));
        assert!(FundamentalSequence::new(vec![int(1), rat(2, 3)]).is_err());
        assert!(FundamentalSequence::new(vec![int(1), int(1)]).is_err());
    }

    #[test]
    fn dichotomy_verdicts() {
        let seq = FundamentalSequence::geometric(int(1), 2, 8).unwrap();
        let div = DivisibleFamily::new(seq.clone(), DyadicTranslations::new());
        assert_eq!(check_dichotomy(&div, 5).unwrap(), Dichotomy::NoneHomeo);
        let plain = DivisibleFamily::new(seq.clone(), PlainTranslations::new());
        assert_eq!(check_dichotomy(&plain, 5).unwrap(), Dichotomy::AllHomeo);
        assert_eq!(find_collision(&plain, 5, &[]).unwrap(), None);

        let fam = DyadicTranslations::new();
        let mut table: Vec<_> = seq.elements()[..3].iter().map(|d| (d.clone(), fam.map(d).unwrap())).collect();
        let sp = fam.space().clone();
        table.push((seq.elements()[3].clone(), PiecewiseMonotoneMap::identity(&sp)));
        let mixed = DivisibleFamily::new(seq, ExplicitFamily::new(table));
        assert!(matches!(check_dichotomy(&mixed, 4).unwrap(), Dichotomy::Inconsistent { .. }));
        assert!(matches!(check_dichotomy(&mixed, 5), Err(Error::ResolverGap(_))));
    }

    #[test]
    fn collision_in_translation_family() {
        let seq = FundamentalSequence::geometric(int(1), 2, 8).unwrap();
        let div = DivisibleFamily::new(seq, DyadicTranslations::new());
        let sums = div.pairwise_sums(5).unwrap();
        let cert = find_collision(&div, 5, &sums).unwrap().unwrap();
        let (u, v) = DyadicTranslations::collision_pair();
        assert_eq!((cert.u0.clone(), cert.v0.clone()), (u.clone(), v.clone()));
        let sep = check_separation(&div, &cert).unwrap();
        assert_eq!(sep.images.len(), cert.tested.len());

        let fam = DyadicTranslations::new();
        for d in [int(1), rat(1, 2), rat(1, 4), rat(3, 4)] {
            let m = fam.map(&d).unwrap();
            let image = ExtPoint::new(X1, Coord::minus(d.clone()));
            assert_eq!(m.apply(&u).unwrap(), image);
            assert_eq!(m.apply(&v).unwrap(), image);
        }

        let same = CollisionCertificate { u0: u.clone(), v0: u.clone(), tested: vec![int(1)] };
        assert!(matches!(check_separation(&div, &same), Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn fabricated_collision_rejected() {
        let seq = FundamentalSequence::geometric(int(1), 2, 4).unwrap();
        let plain = DivisibleFamily::new(seq, PlainTranslations::new());
        let cert = CollisionCertificate {
            u0: ExtPoint::new(ComponentId(0), Coord::interior(int(0))),
            v0: ExtPoint::new(ComponentId(0), Coord::interior(int(1))),
            tested: vec![int(1)],
        };
        assert!(matches!(check_separation(&plain, &cert), Err(Error::InvalidCertificate(_))));
    }
}
