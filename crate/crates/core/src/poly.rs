//! Dense univariate polynomials with rational coefficients.
//!
//! Besides ring arithmetic this provides exact sign analysis on closed
//! intervals: a closed form for degree ≤ 2 and Sturm-sequence root isolation
//! for everything else.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, midpoint, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// `slope * x + offset`.
    pub fn linear(slope: Rational, offset: Rational) -> Self {
        Poly::new(vec![offset, slope])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term (the value of a constant polynomial).
    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// `p(slope * x + offset)`.
    pub fn compose_affine(&self, slope: &Rational, offset: &Rational) -> Poly {
        let inner = Poly::linear(slope.clone(), offset.clone());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors (same roots, all simple).
    pub fn squarefree(&self) -> Poly {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain
    }

    fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    /// `self` must be squarefree and nonzero at `a` and `b`.
    fn count_roots_open(chain: &[Poly], a: &Rational, b: &Rational) -> usize {
        Self::sign_variations(chain, a) - Self::sign_variations(chain, b)
    }

    /// Isolates the distinct real roots in the open interval `(a, b)`.
    pub fn isolate_roots(&self, a: &Rational, b: &Rational) -> Vec<RootLocation> {
        let mut out = Vec::new();
        if self.degree() < 1 || a >= b {
            return out;
        }
        let mut q = self.squarefree();
        // Endpoints are excluded, and the Sturm count needs nonzero endpoint values.
        for e in [a, b] {
            if q.eval(e).is_zero() {
                q = q.div_rem(&Poly::linear(Rational::one(), -e.clone())).0;
            }
        }
        isolate_rec(&q, a.clone(), b.clone(), &mut out);
        out.sort_by(|x, y| x.lower().cmp(y.lower()));
        out
    }

    /// Minimum of `self` on `[a, b]` for degree ≤ 2, by endpoint and vertex
    /// evaluation. Returns `None` for higher degree.
    pub fn min_on_closed_quadratic(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        if self.degree() > 2 {
            return None;
        }
        let mut m = self.eval(a).min(self.eval(b));
        if self.degree() == 2 {
            let c2 = &self.coeffs[2];
            let c1 = &self.coeffs[1];
            if c2.is_positive() {
                let vertex = -c1 / (c2 * int(2));
                if &vertex > a && &vertex < b {
                    m = m.min(self.eval(&vertex));
                }
            }
        }
        Some(m)
    }

    /// Sign-based check that `self ≥ 0` on `[a, b]`, via root isolation.
    pub fn nonneg_on_closed_sturm(&self, a: &Rational, b: &Rational) -> bool {
        if self.eval(a).is_negative() || self.eval(b).is_negative() {
            return false;
        }
        if a >= b || self.degree() < 1 {
            return true;
        }
        sample_points_between_roots(&self.isolate_roots(a, b), a, b).iter().all(|x| !self.eval(x).is_negative())
    }

    /// `self ≥ 0` on `[a, b]`: closed form up to degree 2, root isolation above.
    pub fn nonneg_on_closed(&self, a: &Rational, b: &Rational) -> bool {
        match self.min_on_closed_quadratic(a, b) {
            Some(m) => !m.is_negative(),
            None => self.nonneg_on_closed_sturm(a, b),
        }
    }

    /// `self > 0` everywhere on `[a, b]`.
    pub fn positive_on_closed(&self, a: &Rational, b: &Rational) -> bool {
        if !self.eval(a).is_positive() || !self.eval(b).is_positive() {
            return false;
        }
        if a >= b || self.degree() < 1 {
            return true;
        }
        match self.min_on_closed_quadratic(a, b) {
            Some(m) => m.is_positive(),
            None => self.isolate_roots(a, b).is_empty(),
        }
    }
}

fn isolate_rec(q: &Poly, a: Rational, b: Rational, out: &mut Vec<RootLocation>) {
    if q.degree() < 1 {
        return;
    }
    let chain = q.sturm_chain();
    let n = Poly::count_roots_open(&chain, &a, &b);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RootLocation::Between(a, b));
        return;
    }
    let m = midpoint(&a, &b);
    if q.eval(&m).is_zero() {
        out.push(RootLocation::Exact(m.clone()));
        let reduced = q.div_rem(&Poly::linear(Rational::one(), -m)).0;
        isolate_rec(&reduced, a, b, out);
    } else {
        isolate_rec(q, a, m.clone(), out);
        isolate_rec(q, m, b, out);
    }
}

/// A real root located exactly or strictly inside an open rational interval
/// whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    Between(Rational, Rational),
}

impl RootLocation {
    pub fn lower(&self) -> &Rational {
        match self {
            RootLocation::Exact(r) => r,
            RootLocation::Between(l, _) => l,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            RootLocation::Exact(r) => r,
            RootLocation::Between(_, u) => u,
        }
    }
}

/// One point in every gap of `(a, b)` between consecutive isolated roots.
fn sample_points_between_roots(roots: &[RootLocation], a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut bounds = Vec::with_capacity(roots.len() + 2);
    bounds.push(a.clone());
    for r in roots {
        bounds.push(r.lower().clone());
        bounds.push(r.upper().clone());
    }
    bounds.push(b.clone());
    bounds.chunks(2).map(|gap| if gap[0] == gap[1] { gap[0].clone() } else { midpoint(&gap[0], &gap[1]) }).collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        Poly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = p(&[(1, 1), (-3, 1), (0, 1), (2, 1)]);
        let b = p(&[(-1, 2), (1, 1)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn squarefree_strips_repeated_roots() {
        // (x - 1)^2 (x + 2)
        let a = &(&p(&[(-1, 1), (1, 1)]) * &p(&[(-1, 1), (1, 1)])) * &p(&[(2, 1), (1, 1)]);
        let s = a.squarefree();
        assert_eq!(s.degree(), 2);
        assert!(s.eval(&int(1)).is_zero());
        assert!(s.eval(&int(-2)).is_zero());
    }

    #[test]
    fn isolates_irrational_and_rational_roots() {
        // (x^2 - 2)(x - 1/2)
        let a = &p(&[(-2, 1), (0, 1), (1, 1)]) * &p(&[(-1, 2), (1, 1)]);
        let roots = a.isolate_roots(&int(-3), &int(3));
        assert_eq!(roots.len(), 3);
        for r in &roots {
            if let RootLocation::Between(l, u) = r {
                assert!(a.eval(l) * a.eval(u) < Rational::zero());
            }
        }
    }

    #[test]
    fn compose_affine_matches_pointwise() {
        let a = p(&[(1, 1), (2, 1), (-1, 3)]);
        let c = a.compose_affine(&rat(-2, 1), &rat(1, 2));
        for x in [rat(0, 1), rat(3, 7), rat(-5, 2)] {
            assert_eq!(c.eval(&x), a.eval(&(rat(-2, 1) * &x + rat(1, 2))));
        }
    }

    #[test]
    fn quartic_with_double_root_is_nonnegative() {
        // (x - 1/3)^2 (x^2 + 1) >= 0 with a touching zero.
        let sq = &p(&[(-1, 3), (1, 1)]) * &p(&[(-1, 3), (1, 1)]);
        let a = &sq * &p(&[(1, 1), (0, 1), (1, 1)]);
        assert!(a.nonneg_on_closed(&int(-1), &int(1)));
        assert!(!a.positive_on_closed(&int(-1), &int(1)));
        assert!(a.positive_on_closed(&int(1), &int(2)));
        let b = &a - &Poly::constant(rat(1, 1000));
        assert!(!b.nonneg_on_closed(&int(-1), &int(1)));
    }

    #[test]
    fn quadratic_vertex_inside_interval() {
        // x^2 - x on [0, 1] has minimum -1/4 at x = 1/2.
        let a = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(a.min_on_closed_quadratic(&int(0), &int(1)), Some(rat(-1, 4)));
        assert!(!a.nonneg_on_closed(&int(0), &int(1)));
        assert!(a.nonneg_on_closed(&int(1), &int(2)));
    }
}
