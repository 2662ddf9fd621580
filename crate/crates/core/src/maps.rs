//! Piecewise monotone affine self-maps of an [`OrderedCutSpace`].
//!
//! A map is a finite list of affine pieces `x ↦ slope·x + offset` over
//! closed order intervals, plus a finite table of point overrides. An
//! increasing piece keeps side tags (`c⁻ ↦ d⁻`), a decreasing piece swaps
//! them, and infinities go to the matching infinity. Points whose natural
//! image is not a legal point of the target (a cut point landing on a
//! non-cut value or vice versa) must be overridden.
//!
//! Governance: an override beats every piece; otherwise the piece whose
//! domain contains the point governs, and at an endpoint shared by two
//! pieces the left piece (whose domain ends there) governs. If the right
//! piece disagrees there, [`PiecewiseMonotoneMap::check_continuity`]
//! reports it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, is_signed_power_of_two, midpoint, Rational};
use crate::space::{is_gap, Bound, ComponentId, Coord, CutSpec, ExtPoint, OrderInterval, OrderedCutSpace, Side};

/// One affine branch `x ↦ slope·x + offset` from `domain` into `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub domain: OrderInterval,
    pub target: ComponentId,
    pub slope: Rational,
    pub offset: Rational,
}

impl Piece {
    pub fn new(domain: OrderInterval, target: ComponentId, slope: Rational, offset: Rational) -> Self {
        Piece { domain, target, slope, offset }
    }

    pub fn increasing(&self) -> bool {
        self.slope.is_positive()
    }

    pub fn eval_value(&self, v: &Rational) -> Rational {
        &self.slope * v + &self.offset
    }

    pub fn inverse_value(&self, w: &Rational) -> Rational {
        (w - &self.offset) / &self.slope
    }

    /// The image coordinate by the side rule, not checked against the
    /// target's cut specification.
    pub fn raw_image(&self, c: &Coord) -> Coord {
        let up = self.increasing();
        match c {
            Coord::NegInf => {
                if up {
                    Coord::NegInf
                } else {
                    Coord::PosInf
                }
            }
            Coord::PosInf => {
                if up {
                    Coord::PosInf
                } else {
                    Coord::NegInf
                }
            }
            Coord::Finite(v, s) => Coord::Finite(self.eval_value(v), if up { *s } else { s.flip() }),
        }
    }

    pub fn lo(&self) -> &Coord {
        self.domain.lo().coord()
    }

    pub fn hi(&self) -> &Coord {
        self.domain.hi().coord()
    }
}

/// What decides the image of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Override,
    Piece(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Continuity {
    Ok,
    Violation(ExtPoint),
}

impl Continuity {
    pub fn is_ok(&self) -> bool {
        matches!(self, Continuity::Ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseMonotoneMap {
    space: OrderedCutSpace,
    pieces: Vec<Piece>,
    overrides: BTreeMap<ExtPoint, ExtPoint>,
}

impl PiecewiseMonotoneMap {
    /// Validates coverage, images and cut compatibility.
    pub fn new(space: OrderedCutSpace, pieces: Vec<Piece>, overrides: BTreeMap<ExtPoint, ExtPoint>) -> Result<Self> {
        let map = PiecewiseMonotoneMap { space, pieces, overrides };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(space: &OrderedCutSpace) -> Self {
        let pieces = space
            .all()
            .into_iter()
            .map(|d| {
                let t = d.component;
                Piece::new(d, t, Rational::one(), Rational::zero())
            })
            .collect();
        PiecewiseMonotoneMap { space: space.clone(), pieces, overrides: BTreeMap::new() }
    }

    pub fn space(&self) -> &OrderedCutSpace {
        &self.space
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn overrides(&self) -> &BTreeMap<ExtPoint, ExtPoint> {
        &self.overrides
    }

    fn validate(&self) -> Result<()> {
        let space = &self.space;
        for (k, p) in self.pieces.iter().enumerate() {
            if p.slope.is_zero() {
                return Err(Error::InvalidMap(format!("piece {k} has zero slope")));
            }
            if !p.domain.lo().is_closed() || !p.domain.hi().is_closed() {
                return Err(Error::InvalidMap(format!("piece {k} domain must be closed")));
            }
            space.check_interval(&p.domain)?;
            if !p.domain.has_distinct_values() {
                return Err(Error::InvalidMap(format!("piece {k} has a degenerate domain {}", p.domain)));
            }
            let tgt = space.component(p.target)?;
            for end in [p.lo(), p.hi()] {
                let img = p.raw_image(end);
                if img < tgt.left_end || img > tgt.right_end {
                    return Err(Error::InvalidMap(format!(
                        "piece {k} maps {end} to {img}, outside component {}",
                        p.target
                    )));
                }
            }
        }
        for (x, y) in &self.overrides {
            space.check_point(x)?;
            space.check_point(y)?;
        }
        self.check_coverage()?;
        for k in 0..self.pieces.len() {
            self.check_cut_compatibility(k)?;
        }
        Ok(())
    }

    fn check_coverage(&self) -> Result<()> {
        for comp in self.space.components() {
            let mut doms: Vec<&OrderInterval> =
                self.pieces.iter().map(|p| &p.domain).filter(|d| d.component == comp.id).collect();
            doms.sort();
            let first =
                doms.first().ok_or_else(|| Error::CoverageGap(ExtPoint::new(comp.id, comp.left_end.clone())))?;
            if first.lo().coord() != &comp.left_end {
                return Err(Error::CoverageGap(ExtPoint::new(comp.id, comp.left_end.clone())));
            }
            for w in doms.windows(2) {
                let (a, b) = (w[0].hi().coord(), w[1].lo().coord());
                if a == b || is_gap(a, b) {
                    continue;
                }
                return Err(if b < a {
                    Error::InvalidMap(format!("piece domains {} and {} overlap", w[0], w[1]))
                } else {
                    Error::CoverageGap(ExtPoint::new(comp.id, a.clone()))
                });
            }
            let last = doms.last().expect("nonempty");
            if last.hi().coord() != &comp.right_end {
                return Err(Error::CoverageGap(ExtPoint::new(comp.id, last.hi().coord().clone())));
            }
        }
        Ok(())
    }

    /// Every point of piece `k` whose cut status differs from that of its
    /// natural image must be overridden (or governed by the left neighbour).
    fn check_cut_compatibility(&self, k: usize) -> Result<()> {
        let p = &self.pieces[k];
        let src = &self.space.component(p.domain.component)?.cuts;
        let tgt = &self.space.component(p.target)?.cuts;
        let values = cut_mismatches(p, src, tgt).ok_or_else(|| {
            Error::InvalidMap(format!(
                "piece {k}: the cut structure of its image differs from its domain at infinitely many points"
            ))
        })?;
        for v in values {
            let sides: &[Side] = if src.is_cut(&v) { &[Side::Minus, Side::Plus] } else { &[Side::Interior] };
            for s in sides {
                let x = ExtPoint::new(p.domain.component, Coord::Finite(v.clone(), *s));
                if !p.domain.contains(&x) || self.overrides.contains_key(&x) {
                    continue;
                }
                if self.rule(&x)? != Rule::Piece(k) {
                    continue;
                }
                return Err(Error::InvalidImage(x));
            }
        }
        Ok(())
    }

    /// The rule that decides the image of `x`.
    pub fn rule(&self, x: &ExtPoint) -> Result<Rule> {
        if self.overrides.contains_key(x) {
            return Ok(Rule::Override);
        }
        let mut found = None;
        for (k, p) in self.pieces.iter().enumerate() {
            if p.domain.contains(x) {
                if p.hi() == &x.coord {
                    return Ok(Rule::Piece(k));
                }
                found.get_or_insert(k);
            }
        }
        found.map(Rule::Piece).ok_or_else(|| Error::CoverageGap(x.clone()))
    }

    /// The natural image of `x` under piece `k`, if it is a legal point.
    pub fn natural_image(&self, k: usize, x: &ExtPoint) -> Option<ExtPoint> {
        let p = &self.pieces[k];
        let y = ExtPoint::new(p.target, p.raw_image(&x.coord));
        self.space.contains(&y).then_some(y)
    }

    pub fn apply(&self, x: &ExtPoint) -> Result<ExtPoint> {
        self.space.check_point(x)?;
        match self.rule(x)? {
            Rule::Override => Ok(self.overrides[x].clone()),
            Rule::Piece(k) => self.natural_image(k, x).ok_or_else(|| Error::InvalidImage(x.clone())),
        }
    }

    /// All `x` with `apply(x) = y`, in order.
    pub fn preimage(&self, y: &ExtPoint) -> Result<Vec<ExtPoint>> {
        self.space.check_point(y)?;
        let mut out = BTreeSet::new();
        for (x, img) in &self.overrides {
            if img == y {
                out.insert(x.clone());
            }
        }
        for p in self.pieces.iter().filter(|p| p.target == y.component) {
            let src = self.space.component(p.domain.component)?;
            let candidates: Vec<Coord> = match &y.coord {
                Coord::NegInf => alloc::vec![if p.increasing() { Coord::NegInf } else { Coord::PosInf }],
                Coord::PosInf => alloc::vec![if p.increasing() { Coord::PosInf } else { Coord::NegInf }],
                Coord::Finite(w, _) => {
                    let v = p.inverse_value(w);
                    if src.cuts.is_cut(&v) {
                        alloc::vec![Coord::minus(v.clone()), Coord::plus(v)]
                    } else {
                        alloc::vec![Coord::interior(v)]
                    }
                }
            };
            for c in candidates {
                let x = ExtPoint::new(p.domain.component, c);
                if p.domain.contains(&x) && src.contains(&x.coord) && &self.apply(&x)? == y {
                    out.insert(x);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Index of the piece covering points immediately below `x`.
    pub fn piece_left_of(&self, x: &ExtPoint) -> Option<usize> {
        let comp = self.space.component(x.component).ok()?;
        if !comp.accumulates_from_left(&x.coord) {
            return None;
        }
        self.pieces.iter().position(|p| p.domain.component == x.component && p.lo() < &x.coord && &x.coord <= p.hi())
    }

    /// Index of the piece covering points immediately above `x`.
    pub fn piece_right_of(&self, x: &ExtPoint) -> Option<usize> {
        let comp = self.space.component(x.component).ok()?;
        if !comp.accumulates_from_right(&x.coord) {
            return None;
        }
        self.pieces.iter().position(|p| p.domain.component == x.component && p.lo() <= &x.coord && &x.coord < p.hi())
    }

    /// Limit of piece `k` at `x` approached from below (`from_left`) or above.
    pub fn piece_limit(&self, k: usize, x: &ExtPoint, from_left: bool) -> ExtPoint {
        let p = &self.pieces[k];
        let tgt = self.space.component(p.target).expect("validated");
        let coord = match &x.coord {
            Coord::Finite(v, _) => {
                let w = p.eval_value(v);
                // Increasing pieces approach from the same side.
                let side = if from_left == p.increasing() { Side::Minus } else { Side::Plus };
                tgt.point_at(&w, side)
            }
            c => p.raw_image(c),
        };
        ExtPoint::new(p.target, coord)
    }

    /// Points where continuity could fail: piece endpoints and override keys.
    pub fn junction_points(&self) -> Vec<ExtPoint> {
        let mut pts = BTreeSet::new();
        for p in &self.pieces {
            pts.insert(ExtPoint::new(p.domain.component, p.lo().clone()));
            pts.insert(ExtPoint::new(p.domain.component, p.hi().clone()));
        }
        pts.extend(self.overrides.keys().cloned());
        pts.into_iter().collect()
    }

    /// Compares both one-sided limits with the value at every junction.
    /// `c⁻` and `c⁺` impose no constraint on each other.
    pub fn check_continuity(&self) -> Continuity {
        for x in self.junction_points() {
            let Ok(y) = self.apply(&x) else {
                return Continuity::Violation(x);
            };
            if let Some(k) = self.piece_left_of(&x) {
                if self.piece_limit(k, &x, true) != y {
                    return Continuity::Violation(x);
                }
            }
            if let Some(k) = self.piece_right_of(&x) {
                if self.piece_limit(k, &x, false) != y {
                    return Continuity::Violation(x);
                }
            }
        }
        Continuity::Ok
    }

    /// A point where `self` and `other` differ, or `None` if they agree
    /// everywhere. Open cells are compared piece against piece.
    pub fn first_difference(&self, other: &PiecewiseMonotoneMap) -> Result<Option<ExtPoint>> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut pts = self.junction_points();
        pts.extend(other.junction_points());
        for comp in self.space.components() {
            let coords = pts.iter().filter(|p| p.component == comp.id).map(|p| p.coord.clone());
            for cell in self.space.cells(comp.id, coords.collect::<Vec<_>>())? {
                let x = cell.representative();
                let same = match &cell {
                    crate::space::Cell::Point(_) => self.apply(&x)? == other.apply(&x)?,
                    crate::space::Cell::Open { .. } => match (self.rule(&x)?, other.rule(&x)?) {
                        (Rule::Piece(a), Rule::Piece(b)) => {
                            let (p, q) = (&self.pieces[a], &other.pieces[b]);
                            p.target == q.target && p.slope == q.slope && p.offset == q.offset
                        }
                        _ => self.apply(&x)? == other.apply(&x)?,
                    },
                };
                if !same {
                    return Ok(Some(x));
                }
            }
        }
        Ok(None)
    }

    /// The composite `self ∘ inner` (apply `inner` first) as a flat map.
    pub fn compose(&self, inner: &PiecewiseMonotoneMap) -> Result<PiecewiseMonotoneMap> {
        if self.space != inner.space {
            return Err(Error::SpaceMismatch);
        }
        let space = &self.space;
        let mut pieces = Vec::new();
        for g in &inner.pieces {
            let src = space.component(g.domain.component)?;
            for f in self.pieces.iter().filter(|f| f.domain.component == g.target) {
                let pulled = pull_back(g, &f.domain);
                let Some(dom) = g.domain.intersect(&pulled) else { continue };
                let dom = close_at_non_cuts(dom, &src.cuts);
                if !dom.has_distinct_values() {
                    continue;
                }
                pieces.push(Piece::new(dom, f.target, &f.slope * &g.slope, &f.slope * &g.offset + &f.offset));
            }
        }
        pieces.sort_by(|a, b| a.domain.cmp(&b.domain));
        let mut special: BTreeSet<ExtPoint> = inner.overrides.keys().cloned().collect();
        for p in &pieces {
            special.insert(ExtPoint::new(p.domain.component, p.lo().clone()));
            special.insert(ExtPoint::new(p.domain.component, p.hi().clone()));
        }
        for y in self.junction_points() {
            special.extend(inner.preimage(&y)?);
        }
        let draft = PiecewiseMonotoneMap { space: space.clone(), pieces, overrides: BTreeMap::new() };
        let mut overrides = BTreeMap::new();
        for x in special {
            let y = self.apply(&inner.apply(&x)?)?;
            let natural = match draft.rule(&x)? {
                Rule::Piece(k) => draft.natural_image(k, &x),
                Rule::Override => None,
            };
            if natural.as_ref() != Some(&y) {
                overrides.insert(x, y);
            }
        }
        PiecewiseMonotoneMap::new(space.clone(), draft.pieces, overrides)
            .map_err(|e| Error::CompositionMismatch(format!("{e}")))
    }
}

/// The source set that piece `g` maps into the closed interval `e`.
fn pull_back(g: &Piece, e: &OrderInterval) -> OrderInterval {
    let pre = |c: &Coord| -> Coord {
        match c {
            Coord::Finite(w, s) => Coord::Finite(g.inverse_value(w), if g.increasing() { *s } else { s.flip() }),
            inf => {
                // Infinities pull back to the infinity that maps onto them.
                let up = g.increasing();
                match (inf, up) {
                    (Coord::NegInf, true) | (Coord::PosInf, false) => Coord::NegInf,
                    _ => Coord::PosInf,
                }
            }
        }
    };
    let (lo, hi) = if g.increasing() {
        (pre(e.lo().coord()), pre(e.hi().coord()))
    } else {
        (pre(e.hi().coord()), pre(e.lo().coord()))
    };
    OrderInterval::closed(g.domain.component, lo, hi)
}

/// Turns bounds whose side tags are illegal for `cuts` into legal ones
/// describing the same set of points, closing at non-cut values.
fn close_at_non_cuts(iv: OrderInterval, cuts: &CutSpec) -> OrderInterval {
    let fix = |b: &Bound, lower: bool| -> Bound {
        match b.coord() {
            Coord::Finite(v, s) if cuts.is_cut(v) => {
                let side = match s {
                    Side::Interior => {
                        if lower {
                            Side::Plus
                        } else {
                            Side::Minus
                        }
                    }
                    s => *s,
                };
                Bound::Closed(Coord::Finite(v.clone(), side))
            }
            Coord::Finite(v, _) => Bound::Closed(Coord::interior(v.clone())),
            c => Bound::Closed(c.clone()),
        }
    };
    OrderInterval::new(iv.component, fix(iv.lo(), true), fix(iv.hi(), false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lattice {
    Finite,
    Integers,
    Dyadics,
}

fn lattice_at(spec: &CutSpec, sample: &Rational) -> Lattice {
    match spec {
        CutSpec::FiniteSet(_) => Lattice::Finite,
        CutSpec::IntegersAtMost(b) if sample > b => Lattice::Finite,
        CutSpec::IntegersAtMost(_) | CutSpec::AllIntegers => Lattice::Integers,
        CutSpec::AllDyadics => Lattice::Dyadics,
    }
}

fn preserves(l: Lattice, slope: &Rational, offset: &Rational) -> bool {
    match l {
        Lattice::Integers => slope.abs().is_one() && offset.is_integer(),
        Lattice::Dyadics => is_signed_power_of_two(slope) && crate::rational::is_dyadic(offset),
        Lattice::Finite => false,
    }
}

/// Finite values `v` in the piece's domain range where `v` is a cut of the
/// source but `slope·v + offset` is not a cut of the target, or vice versa.
/// `None` when there are infinitely many.
fn cut_mismatches(p: &Piece, src: &CutSpec, tgt: &CutSpec) -> Option<Vec<Rational>> {
    let a = p.lo().value().cloned();
    let b = p.hi().value().cloned();
    let inside = |v: &Rational| a.as_ref().is_none_or(|a| v > a) && b.as_ref().is_none_or(|b| v < b);
    let mut thresholds: BTreeSet<Rational> = BTreeSet::new();
    if let CutSpec::IntegersAtMost(bs) = src {
        thresholds.insert(bs.clone());
    }
    if let CutSpec::IntegersAtMost(bt) = tgt {
        thresholds.insert(p.inverse_value(bt));
    }
    let mut checkpoints: BTreeSet<Rational> = thresholds.iter().filter(|v| inside(v)).cloned().collect();
    let mut cuts_at: Vec<Option<Rational>> = Vec::new();
    cuts_at.push(a.clone());
    cuts_at.extend(checkpoints.iter().cloned().map(Some));
    cuts_at.push(b.clone());
    checkpoints.extend(a.iter().cloned());
    checkpoints.extend(b.iter().cloned());

    for w in cuts_at.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let sample = match (lo, hi) {
            (Some(l), Some(h)) => midpoint(l, h),
            (Some(l), None) => l + int(1),
            (None, Some(h)) => h - int(1),
            (None, None) => Rational::zero(),
        };
        let ks = lattice_at(src, &sample);
        let kt = lattice_at(tgt, &p.eval_value(&sample));
        let bounded = lo.is_some() && hi.is_some();
        let same_lattice = ks == kt && preserves(ks, &p.slope, &p.offset);
        if same_lattice {
            continue;
        }
        if ks == Lattice::Dyadics || kt == Lattice::Dyadics {
            return None;
        }
        if !bounded && (ks == Lattice::Integers || kt == Lattice::Integers) {
            return None;
        }
        // Both sides are finite on this range: list them.
        let (l, h) = (lo.clone(), hi.clone());
        checkpoints.extend(list_cuts(src, l.as_ref(), h.as_ref())?);
        let (il, ih) = match (&l, &h) {
            (Some(l), Some(h)) => {
                let (x, y) = (p.eval_value(l), p.eval_value(h));
                if x <= y {
                    (Some(x), Some(y))
                } else {
                    (Some(y), Some(x))
                }
            }
            _ => {
                // Unbounded with both sides finite sets: image range is a half-line.
                let img = |v: &Option<Rational>| v.as_ref().map(|v| p.eval_value(v));
                if p.increasing() {
                    (img(&l), img(&h))
                } else {
                    (img(&h), img(&l))
                }
            }
        };
        for t in list_cuts(tgt, il.as_ref(), ih.as_ref())? {
            checkpoints.insert(p.inverse_value(&t));
        }
    }
    Some(
        checkpoints
            .into_iter()
            .filter(|v| a.as_ref().is_none_or(|a| v >= a) && b.as_ref().is_none_or(|b| v <= b))
            .filter(|v| src.is_cut(v) != tgt.is_cut(&p.eval_value(v)))
            .collect(),
    )
}

/// Cut values in `[lo, hi]` (unbounded where `None`), when finitely many.
fn list_cuts(spec: &CutSpec, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Vec<Rational>> {
    match (spec, lo, hi) {
        (CutSpec::FiniteSet(vs), _, _) => {
            Some(vs.iter().filter(|v| lo.is_none_or(|l| *v >= l) && hi.is_none_or(|h| *v <= h)).cloned().collect())
        }
        (CutSpec::IntegersAtMost(b), Some(l), _) => {
            let h = hi.map_or(b.clone(), |h| h.min(b).clone());
            spec.enumerate(l, &h)
        }
        (_, Some(l), Some(h)) => spec.enumerate(l, h),
        _ => None,
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> x*({}) + ({}) @{}", self.domain, self.slope, self.offset, self.target)
    }
}

impl fmt::Display for PiecewiseMonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.pieces.iter().enumerate() {
            writeln!(f, "piece {k}: {p}")?;
        }
        for (x, y) in &self.overrides {
            writeln!(f, "override: {x} -> {y}")?;
        }
        Ok(())
    }
}

/// An ordered list of maps, applied last to first (`maps[0]` is outermost).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapComposition {
    maps: Vec<PiecewiseMonotoneMap>,
}

impl MapComposition {
    pub fn new(maps: Vec<PiecewiseMonotoneMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::CompositionMismatch("empty composition".into()));
        }
        if maps.windows(2).any(|w| w[0].space != w[1].space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(MapComposition { maps })
    }

    pub fn apply(&self, x: &ExtPoint) -> Result<ExtPoint> {
        let mut y = x.clone();
        for m in self.maps.iter().rev() {
            y = m.apply(&y)?;
        }
        Ok(y)
    }

    pub fn flatten(&self) -> Result<PiecewiseMonotoneMap> {
        let mut iter = self.maps.iter().rev();
        let mut acc = iter.next().expect("nonempty").clone();
        for m in iter {
            acc = m.compose(&acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::space::Component;
    use alloc::vec;

    const C0: ComponentId = ComponentId(0);

    fn pt(c: Coord) -> ExtPoint {
        ExtPoint::new(C0, c)
    }

    fn unit_interval(cuts: CutSpec) -> OrderedCutSpace {
        OrderedCutSpace::new(vec![Component::new(C0, Coord::interior(int(0)), Coord::interior(int(1)), cuts)]).unwrap()
    }

    #[test]
    fn interior_jump_is_a_continuity_violation() {
        let s = unit_interval(CutSpec::none());
        let half = Coord::interior(rat(1, 2));
        let m = PiecewiseMonotoneMap::new(
            s,
            vec![
                Piece::new(OrderInterval::closed(C0, Coord::interior(int(0)), half.clone()), C0, int(1), int(0)),
                Piece::new(OrderInterval::closed(C0, half.clone(), Coord::interior(int(1))), C0, int(1), rat(1, 2)),
            ],
            BTreeMap::new(),
        );
        // The right piece maps [1/2, 1] beyond the component.
        assert!(matches!(m, Err(Error::InvalidMap(_))));

        let s = OrderedCutSpace::new(vec![Component::new(
            C0,
            Coord::interior(int(0)),
            Coord::interior(int(2)),
            CutSpec::none(),
        )])
        .unwrap();
        let m = PiecewiseMonotoneMap::new(
            s,
            vec![
                Piece::new(OrderInterval::closed(C0, Coord::interior(int(0)), half.clone()), C0, int(1), int(0)),
                Piece::new(OrderInterval::closed(C0, half.clone(), Coord::interior(int(2))), C0, rat(2, 3), rat(2, 3)),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(m.check_continuity(), Continuity::Violation(pt(half)));
    }

    #[test]
    fn coverage_gaps_are_rejected() {
        let s = unit_interval(CutSpec::none());
        let r = PiecewiseMonotoneMap::new(
            s,
            vec![Piece::new(
                OrderInterval::closed(C0, Coord::interior(int(0)), Coord::interior(rat(1, 2))),
                C0,
                int(1),
                int(0),
            )],
            BTreeMap::new(),
        );
        assert!(matches!(r, Err(Error::CoverageGap(_))));
    }

    #[test]
    fn cut_mismatch_requires_override() {
        // Cuts at 1/2 only; x -> x/2 maps the cut 1/2 to the non-cut 1/4 and the
        // non-cut 1 to the cut 1/2.
        let s = unit_interval(CutSpec::finite([rat(1, 2)]));
        let piece = Piece::new(
            OrderInterval::closed(C0, Coord::interior(int(0)), Coord::interior(int(1))),
            C0,
            rat(1, 2),
            int(0),
        );
        let r = PiecewiseMonotoneMap::new(s.clone(), vec![piece.clone()], BTreeMap::new());
        assert!(matches!(r, Err(Error::InvalidImage(_))));
        let mut ov = BTreeMap::new();
        ov.insert(pt(Coord::minus(rat(1, 2))), pt(Coord::interior(rat(1, 4))));
        ov.insert(pt(Coord::plus(rat(1, 2))), pt(Coord::interior(rat(1, 4))));
        ov.insert(pt(Coord::interior(int(1))), pt(Coord::minus(rat(1, 2))));
        let m = PiecewiseMonotoneMap::new(s, vec![piece], ov).unwrap();
        assert!(m.check_continuity().is_ok());
        assert_eq!(m.preimage(&pt(Coord::interior(rat(1, 4)))).unwrap().len(), 2);
    }

    #[test]
    fn infinitely_many_mismatches_are_rejected() {
        let s =
            OrderedCutSpace::new(vec![Component::new(C0, Coord::NegInf, Coord::PosInf, CutSpec::AllIntegers)]).unwrap();
        let r = PiecewiseMonotoneMap::new(
            s,
            vec![Piece::new(OrderInterval::closed(C0, Coord::NegInf, Coord::PosInf), C0, int(2), int(0))],
            BTreeMap::new(),
        );
        assert!(matches!(r, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn identity_preimage_is_singleton() {
        let s = unit_interval(CutSpec::finite([rat(1, 3)]));
        let id = PiecewiseMonotoneMap::identity(&s);
        for c in [Coord::interior(int(0)), Coord::minus(rat(1, 3)), Coord::plus(rat(1, 3)), Coord::interior(rat(3, 4))]
        {
            assert_eq!(id.preimage(&pt(c.clone())).unwrap(), vec![pt(c)]);
        }
    }

    #[test]
    fn decreasing_piece_swaps_sides() {
        let s = OrderedCutSpace::new(vec![Component::new(
            C0,
            Coord::interior(int(-1)),
            Coord::interior(int(1)),
            CutSpec::finite([int(0)]),
        )])
        .unwrap();
        let m = PiecewiseMonotoneMap::new(
            s,
            vec![Piece::new(
                OrderInterval::closed(C0, Coord::interior(int(-1)), Coord::interior(int(1))),
                C0,
                int(-1),
                int(0),
            )],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(m.apply(&pt(Coord::minus(int(0)))).unwrap(), pt(Coord::plus(int(0))));
        assert!(m.check_continuity().is_ok());
        let sq = m.compose(&m).unwrap();
        for c in [Coord::interior(rat(-1, 3)), Coord::minus(int(0)), Coord::plus(int(0))] {
            assert_eq!(sq.apply(&pt(c.clone())).unwrap(), pt(c));
        }
    }
}
