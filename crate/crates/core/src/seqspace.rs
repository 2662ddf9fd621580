//! Bi-infinite sequences in `Π_{n∈Z} [0,1)` that are eventually constant in
//! both directions, with the shift-and-double map
//! `y_{n-1} = x_n (n ≠ 1)`, `y_0 = 2x_1 mod 1`.
//!
//! `Z` is the closed set of sequences with `x_n ∈ [0, 1/2]` for all `n ≥ 1`;
//! the map sends `Z` into itself. Paths are sequences whose entries are
//! affine in a parameter `t` ranging over an open interval.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, rat, Rational};

/// A point of the sequence space. Coordinate `n` is `left_tail` below
/// `offset`, `core[n - offset]` inside the core, `right_tail` above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqPoint {
    left_tail: Rational,
    core: Vec<Rational>,
    offset: i64,
    right_tail: Rational,
}

fn in_unit(v: &Rational) -> bool {
    !v.is_negative() && v < &Rational::one()
}

impl SeqPoint {
    pub fn new(left_tail: Rational, core: Vec<Rational>, offset: i64, right_tail: Rational) -> Result<Self> {
        if let Some(bad) = core.iter().chain([&left_tail, &right_tail]).find(|v| !in_unit(v)) {
            return Err(Error::InvalidSequence(format!("coordinate {bad} outside [0,1)")));
        }
        let mut p = SeqPoint { left_tail, core, offset, right_tail };
        p.canonicalize();
        Ok(p)
    }

    pub fn constant(v: Rational) -> Result<Self> {
        Self::new(v.clone(), Vec::new(), 0, v)
    }

    pub fn left_tail(&self) -> &Rational {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &Rational {
        &self.right_tail
    }

    pub fn core(&self) -> &[Rational] {
        &self.core
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn get(&self, n: i64) -> &Rational {
        if n < self.offset {
            &self.left_tail
        } else if n - self.offset < self.core.len() as i64 {
            &self.core[(n - self.offset) as usize]
        } else {
            &self.right_tail
        }
    }

    /// Builds the point with coordinates `f(n)` on `[lo, hi]` and the given
    /// tails outside.
    fn from_window(left: Rational, lo: i64, hi: i64, right: Rational, f: impl Fn(i64) -> Rational) -> Result<Self> {
        Self::new(left, (lo..=hi).map(f).collect(), lo, right)
    }

    fn canonicalize(&mut self) {
        let lead = self.core.iter().take_while(|v| **v == self.left_tail).count();
        self.core.drain(..lead);
        self.offset += lead as i64;
        while self.core.last() == Some(&self.right_tail) {
            self.core.pop();
        }
        if self.core.is_empty() && self.left_tail == self.right_tail {
            self.offset = 0;
        }
    }

    /// `x_n ∈ [0, 1/2]` for every `n ≥ 1`.
    pub fn in_z(&self) -> bool {
        let half = rat(1, 2);
        let core_ok = self.core.iter().enumerate().all(|(i, v)| self.offset + (i as i64) < 1 || v <= &half);
        let left_ok = self.offset <= 1 || self.left_tail <= half;
        core_ok && left_ok && self.right_tail <= half
    }

    fn span(&self) -> (i64, i64) {
        (self.offset, self.offset + self.core.len() as i64 - 1)
    }
}

impl fmt::Display for SeqPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(…, {}; ", self.left_tail)?;
        for (i, v) in self.core.iter().enumerate() {
            write!(f, "{}:{}, ", self.offset + i as i64, v)?;
        }
        write!(f, "{}, …)", self.right_tail)
    }
}

fn require_z(x: &SeqPoint) -> Result<()> {
    if x.in_z() {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!("{x} is not in Z")))
    }
}

/// The shift-and-double map.
pub fn seq_apply(x: &SeqPoint) -> Result<SeqPoint> {
    require_z(x)?;
    let (lo, hi) = x.span();
    let two = Rational::from_integer(2.into());
    SeqPoint::from_window(x.left_tail.clone(), (lo - 1).min(-1), hi.max(1), x.right_tail.clone(), |n| {
        if n == 0 {
            frac(&(&two * x.get(1)))
        } else {
            x.get(n + 1).clone()
        }
    })
}

/// The preimages of `y` that lie in `Z`: one or two points.
pub fn seq_preimage_in_z(y: &SeqPoint) -> Result<Vec<SeqPoint>> {
    require_z(y)?;
    let (lo, hi) = y.span();
    let half = rat(1, 2);
    let low_branch = y.get(0) / Rational::from_integer(2.into());
    let mut out = Vec::new();
    for w1 in [low_branch.clone(), &low_branch + &half] {
        if w1 > half {
            continue;
        }
        let w =
            SeqPoint::from_window(y.left_tail.clone(), (lo + 1).min(0), (hi + 1).max(2), y.right_tail.clone(), |n| {
                if n == 1 {
                    w1.clone()
                } else {
                    y.get(n - 1).clone()
                }
            })?;
        if w.in_z() {
            out.push(w);
        }
    }
    Ok(out)
}

/// Whether `x ∈ φⁿ(Z)` for every `n ≤ depth`, found by backward search.
/// Points outside `Z` are never members.
pub fn seq_in_x(x: &SeqPoint, depth: u32) -> Result<bool> {
    if !x.in_z() {
        return Ok(false);
    }
    if depth == 0 {
        return Ok(true);
    }
    for w in seq_preimage_in_z(x)? {
        if seq_in_x(&w, depth - 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `slope·t + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub offset: Rational,
}

/// A comparison `f(t) ⋈ c` that must hold on a whole parameter interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Gt,
    Le,
    Lt,
}

impl Rel {
    fn holds(self, v: &Rational, c: &Rational) -> bool {
        match self {
            Rel::Ge => v >= c,
            Rel::Gt => v > c,
            Rel::Le => v <= c,
            Rel::Lt => v < c,
        }
    }
}

impl Affine {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        Affine { slope, offset }
    }

    pub fn constant(c: Rational) -> Self {
        Affine::new(Rational::zero(), c)
    }

    /// `t ↦ t`.
    pub fn param() -> Self {
        Affine::new(Rational::one(), Rational::zero())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.slope * t + &self.offset
    }

    /// The expression in the parameter `s` with `t = s / k`.
    pub fn rescale(&self, k: &Rational) -> Affine {
        Affine::new(&self.slope / k, self.offset.clone())
    }

    /// A parameter `t ∈ (lo, hi)` at which `f(t) ⋈ c` fails, if any.
    pub fn violation(&self, lo: &Rational, hi: &Rational, rel: Rel, c: &Rational) -> Option<Rational> {
        let mid = (lo + hi) / Rational::from_integer(2.into());
        if self.slope.is_zero() {
            return (!rel.holds(&self.offset, c)).then_some(mid);
        }
        let crossing = (c - &self.offset) / &self.slope;
        let below_fails = !rel.holds(&self.eval(&(&crossing - Rational::one())), c);
        let (a, b) =
            if below_fails { (lo.clone(), hi.clone().min(crossing)) } else { (lo.clone().max(crossing), hi.clone()) };
        (a < b).then(|| (a + b) / Rational::from_integer(2.into()))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope.is_zero(), self.offset.is_zero()) {
            (true, _) => write!(f, "{}", self.offset),
            (false, true) => write!(f, "{}·t", self.slope),
            (false, false) => write!(f, "{}·t + {}", self.slope, self.offset),
        }
    }
}

/// Which end of the parameter interval the path converges at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathEnd {
    Lo,
    Hi,
}

/// A sequence whose entries are affine in `t ∈ (lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqPath {
    pub left_tail: Affine,
    pub core: Vec<Affine>,
    pub offset: i64,
    pub right_tail: Affine,
    pub lo: Rational,
    pub hi: Rational,
    pub limit_at: PathEnd,
    pub limit: SeqPoint,
}

impl SeqPath {
    pub fn entry(&self, n: i64) -> &Affine {
        if n < self.offset {
            &self.left_tail
        } else if n - self.offset < self.core.len() as i64 {
            &self.core[(n - self.offset) as usize]
        } else {
            &self.right_tail
        }
    }

    /// Entries evaluated at `t` without any reduction.
    fn raw_at(&self, t: &Rational) -> (Rational, Vec<Rational>, Rational) {
        (self.left_tail.eval(t), self.core.iter().map(|a| a.eval(t)).collect(), self.right_tail.eval(t))
    }

    pub fn at(&self, t: &Rational) -> Result<SeqPoint> {
        let (l, c, r) = self.raw_at(t);
        SeqPoint::new(l, c, self.offset, r)
    }

    /// Entries at the limiting parameter, read in `R/Z`.
    pub fn endpoint_value(&self) -> Result<SeqPoint> {
        let t = match self.limit_at {
            PathEnd::Lo => &self.lo,
            PathEnd::Hi => &self.hi,
        };
        let (l, c, r) = self.raw_at(t);
        SeqPoint::new(frac(&l), c.iter().map(frac).collect(), self.offset, frac(&r))
    }

    /// Each entry with its index and whether it must also lie in `[0, 1/2]`.
    fn entries_with_range(&self) -> Vec<(i64, &Affine, bool)> {
        let mut out = alloc::vec![(self.offset - 1, &self.left_tail, self.offset > 1)];
        for (i, a) in self.core.iter().enumerate() {
            let n = self.offset + i as i64;
            out.push((n, a, n >= 1));
        }
        out.push((self.offset + self.core.len() as i64, &self.right_tail, true));
        out
    }

    /// A parameter at which the path leaves `Z`, with the offending index.
    pub fn leaves_z(&self) -> Option<(Rational, i64)> {
        if self.lo >= self.hi {
            return Some((self.lo.clone(), 0));
        }
        let half = rat(1, 2);
        for (n, a, in_z) in self.entries_with_range() {
            let mut checks = alloc::vec![(Rel::Ge, Rational::zero()), (Rel::Lt, Rational::one())];
            if in_z {
                checks.push((Rel::Le, half.clone()));
            }
            for (rel, c) in checks {
                if let Some(t) = a.violation(&self.lo, &self.hi, rel, &c) {
                    return Some((t, n));
                }
            }
        }
        None
    }

    /// The path `s ↦ p(s / k)` over `(k·lo, k·hi)`.
    pub fn rescale(&self, k: &Rational) -> Result<SeqPath> {
        if !k.is_positive() {
            return Err(Error::InvalidSequence("rescaling factor must be positive".into()));
        }
        Ok(SeqPath {
            left_tail: self.left_tail.rescale(k),
            core: self.core.iter().map(|a| a.rescale(k)).collect(),
            offset: self.offset,
            right_tail: self.right_tail.rescale(k),
            lo: &self.lo * k,
            hi: &self.hi * k,
            limit_at: self.limit_at,
            limit: self.limit.clone(),
        })
    }

    /// A parameter at which the image of the path point has a second
    /// preimage in `Z`. That happens exactly when `2·x₁(t)` is an integer,
    /// so uniqueness along the path is `0 < x₁(t) < 1/2` on the interval.
    pub fn fibre_not_unique(&self) -> Option<Rational> {
        let x1 = self.entry(1);
        x1.violation(&self.lo, &self.hi, Rel::Gt, &Rational::zero())
            .or_else(|| x1.violation(&self.lo, &self.hi, Rel::Lt, &rat(1, 2)))
    }
}

/// `y⁰ = (…, 0, 0, 1/2, 1/2, …)` with the first `1/2` at index 1.
pub fn y0() -> SeqPoint {
    SeqPoint::new(Rational::zero(), Vec::new(), 1, rat(1, 2)).expect("valid point")
}

/// `w⁰ = (…, 0, 0, 0, 1/2, 1/2, …)` with the first `1/2` at index 2.
pub fn w0() -> SeqPoint {
    SeqPoint::new(Rational::zero(), Vec::new(), 2, rat(1, 2)).expect("valid point")
}

/// `y(t) = (…, t, t, t/2, t/2, …)` on `(0, 1)`, tending to `y⁰` as `t → 1`.
pub fn y_path() -> SeqPath {
    SeqPath {
        left_tail: Affine::param(),
        core: Vec::new(),
        offset: 1,
        right_tail: Affine::new(rat(1, 2), Rational::zero()),
        lo: Rational::zero(),
        hi: Rational::one(),
        limit_at: PathEnd::Hi,
        limit: y0(),
    }
}

/// `u(t) = (…, t, t, 1/2 - t, 1/2 - t, …)` on `(0, 1/2)`, tending to `y⁰` as `t → 0`.
pub fn u_path() -> SeqPath {
    SeqPath {
        left_tail: Affine::param(),
        core: Vec::new(),
        offset: 1,
        right_tail: Affine::new(-Rational::one(), rat(1, 2)),
        lo: Rational::zero(),
        hi: rat(1, 2),
        limit_at: PathEnd::Lo,
        limit: y0(),
    }
}

/// `w(t)`: `t` up to index 0, `t/2` on indices `1..=n`, then `1/2 - t`;
/// `φⁿ(w(t)) = u(t)`. For `n = 1` it tends to `w⁰` as `t → 0`.
pub fn w_path(n: i64) -> SeqPath {
    let limit = SeqPoint::new(Rational::zero(), Vec::new(), n + 1, rat(1, 2)).expect("valid point");
    SeqPath {
        left_tail: Affine::param(),
        core: (1..=n).map(|_| Affine::new(rat(1, 2), Rational::zero())).collect(),
        offset: 1,
        right_tail: Affine::new(-Rational::one(), rat(1, 2)),
        lo: Rational::zero(),
        hi: rat(1, 2),
        limit_at: PathEnd::Lo,
        limit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn canonical_form() {
        let a = SeqPoint::new(int(0), vec![int(0), rat(1, 2)], 0, rat(1, 2)).unwrap();
        assert_eq!(a, y0());
        assert_eq!(a.get(-5), &int(0));
        assert_eq!(a.get(1), &rat(1, 2));
        assert!(SeqPoint::new(int(1), vec![], 0, int(0)).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(seq_apply(&y0()).unwrap(), y0());
        assert_eq!(seq_apply(&w0()).unwrap(), y0());
        let zero = SeqPoint::constant(int(0)).unwrap();
        assert_eq!(seq_apply(&zero).unwrap(), zero);
    }

    #[test]
    fn fibre_of_y0() {
        let mut pre = seq_preimage_in_z(&y0()).unwrap();
        pre.sort();
        let mut expect = vec![y0(), w0()];
        expect.sort();
        assert_eq!(pre, expect);
    }

    #[test]
    fn unique_preimages_along_paths() {
        for t in [rat(1, 3), rat(1, 7), rat(9, 10)] {
            let y = y_path().at(&t).unwrap();
            assert_eq!(seq_preimage_in_z(&y).unwrap(), vec![y.clone()]);
        }
        for t in [rat(1, 3), rat(1, 7), rat(1, 100)] {
            let u = u_path().at(&t).unwrap();
            let w = w_path(1).at(&t).unwrap();
            assert_eq!(seq_preimage_in_z(&u).unwrap(), vec![w.clone()]);
            let mut p = w_path(4).at(&t).unwrap();
            for _ in 0..4 {
                p = seq_apply(&p).unwrap();
            }
            assert_eq!(p, u);
        }
    }

    #[test]
    fn path_limits_and_ranges() {
        for p in [y_path(), u_path(), w_path(1), w_path(3)] {
            assert_eq!(p.endpoint_value().unwrap(), p.limit);
            assert_eq!(p.leaves_z(), None);
        }
        assert_eq!(w_path(1).limit, w0());
        assert_eq!(y_path().fibre_not_unique(), None);
        assert_eq!(w_path(1).fibre_not_unique(), None);
        // u(t) itself has first coordinate 1/2 - t, so its image is unique too,
        // but stretching the interval past 1/2 leaves Z.
        let mut long = u_path();
        long.hi = int(1);
        let (t, _) = long.leaves_z().unwrap();
        assert!(t > rat(1, 2) && t < int(1));
        assert!(long.at(&t).map(|p| !p.in_z()).unwrap_or(true));
    }

    #[test]
    fn membership_by_backward_chains() {
        assert!(seq_in_x(&y0(), 10).unwrap());
        assert!(seq_in_x(&u_path().at(&rat(1, 5)).unwrap(), 12).unwrap());
        let outside = SeqPoint::new(int(0), vec![rat(3, 4)], 1, int(0)).unwrap();
        assert!(!seq_in_x(&outside, 0).unwrap());
    }

    #[test]
    fn affine_violation_witness() {
        let f = Affine::new(int(2), int(-1)); // 2t - 1
        assert_eq!(f.violation(&int(0), &int(1), Rel::Ge, &int(0)), Some(rat(1, 4)));
        assert_eq!(f.violation(&rat(1, 2), &int(1), Rel::Gt, &int(0)), None);
        assert_eq!(f.violation(&int(0), &int(1), Rel::Lt, &int(1)), None);
        assert_eq!(f.violation(&int(0), &int(2), Rel::Lt, &int(1)), Some(rat(3, 2)));
    }
}
