//! Non-admissibility certificates.
//!
//! A certificate names two distinct points `a`, `b` in one fibre and a path
//! converging to each of them along which every point is alone in its own
//! fibre. A continuous cocycle must equal one along both paths, hence at `a`
//! and at `b`, but the fibre sum over `{a, b, …}` is one. A valid certificate
//! therefore rules out every cocycle. An invalid one proves nothing.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::analysis::CellComplex;
use crate::error::Result;
use crate::maps::PiecewiseMonotoneMap;
use crate::rational::Rational;
use crate::seqspace::{seq_apply, Affine, PathEnd, Rel, SeqPath, SeqPoint};
use crate::space::{Bound, Component, ComponentId, Coord, CutSpec, ExtPoint, OrderInterval, Side};

/// A path `t ↦ value(t)` in one component of a cut-line space, over the
/// open parameter interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePath {
    pub component: ComponentId,
    pub value: Affine,
    pub lo: Rational,
    pub hi: Rational,
    pub limit_at: PathEnd,
    pub limit: ExtPoint,
}

impl LinePath {
    pub fn at(&self, t: &Rational) -> ExtPoint {
        ExtPoint::new(self.component, Coord::interior(self.value.eval(t)))
    }

    fn end_param(&self) -> &Rational {
        match self.limit_at {
            PathEnd::Lo => &self.lo,
            PathEnd::Hi => &self.hi,
        }
    }

    /// Smallest and largest value reached on the closed parameter interval.
    fn value_range(&self) -> (Rational, Rational) {
        let (a, b) = (self.value.eval(&self.lo), self.value.eval(&self.hi));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The order limit of the path at its limiting end.
    pub fn order_limit(&self, comp: &Component) -> Coord {
        let v = self.value.eval(self.end_param());
        if self.value.slope.is_zero() || !comp.cuts.is_cut(&v) {
            return Coord::interior(v);
        }
        let increasing_towards_end = match self.limit_at {
            PathEnd::Hi => self.value.slope.is_positive(),
            PathEnd::Lo => self.value.slope.is_negative(),
        };
        Coord::Finite(v, if increasing_towards_end { Side::Minus } else { Side::Plus })
    }

    /// The path `s ↦ p(s / k)` over `(k·lo, k·hi)`.
    pub fn rescale(&self, k: &Rational) -> LinePath {
        LinePath {
            component: self.component,
            value: self.value.rescale(k),
            lo: &self.lo * k,
            hi: &self.hi * k,
            limit_at: self.limit_at,
            limit: self.limit.clone(),
        }
    }

    fn param_of(&self, v: &Rational) -> Rational {
        (v - &self.value.offset) / &self.value.slope
    }

    /// A parameter at which the path is not a point of `comp`.
    fn leaves(&self, comp: &Component) -> Option<Rational> {
        if self.lo >= self.hi {
            return Some(self.lo.clone());
        }
        if let Some(l) = comp.left_end.value() {
            if let Some(t) = self.value.violation(&self.lo, &self.hi, Rel::Ge, l) {
                return Some(t);
            }
        }
        if let Some(r) = comp.right_end.value() {
            if let Some(t) = self.value.violation(&self.lo, &self.hi, Rel::Le, r) {
                return Some(t);
            }
        }
        let (min, max) = self.value_range();
        if self.value.slope.is_zero() {
            return (!comp.contains(&Coord::interior(min))).then(|| self.lo.clone());
        }
        // Values strictly inside the range are taken by interior points;
        // a cut value there has no interior point.
        cut_strictly_between(&comp.cuts, &min, &max).map(|c| self.param_of(&c))
    }
}

/// A cut value in the open range `(a, b)`, if any.
fn cut_strictly_between(cuts: &CutSpec, a: &Rational, b: &Rational) -> Option<Rational> {
    if a >= b {
        return None;
    }
    match cuts.enumerate(a, b) {
        Some(vs) => vs.into_iter().find(|v| v > a && v < b),
        None => {
            // Dense cuts: refine a grid of step 2^-k until a point lands inside.
            let mut scale = Rational::one();
            loop {
                let k = (a * &scale).floor() + Rational::one();
                let v = &k / &scale;
                if &v < b && cuts.is_cut(&v) {
                    return Some(v);
                }
                scale *= Rational::from_integer(2.into());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum NonAdmissibilityCertificate {
    Line { map: PiecewiseMonotoneMap, a: ExtPoint, b: ExtPoint, path_a: LinePath, path_b: LinePath },
    Sequence { a: SeqPoint, b: SeqPoint, path_a: SeqPath, path_b: SeqPath },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid,
    Invalid(String),
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

impl NonAdmissibilityCertificate {
    /// The same certificate with both paths reparametrized by `t = s / k`.
    pub fn rescale(&self, k: &Rational) -> Result<Self> {
        Ok(match self {
            NonAdmissibilityCertificate::Line { map, a, b, path_a, path_b } => NonAdmissibilityCertificate::Line {
                map: map.clone(),
                a: a.clone(),
                b: b.clone(),
                path_a: path_a.rescale(k),
                path_b: path_b.rescale(k),
            },
            NonAdmissibilityCertificate::Sequence { a, b, path_a, path_b } => NonAdmissibilityCertificate::Sequence {
                a: a.clone(),
                b: b.clone(),
                path_a: path_a.rescale(k)?,
                path_b: path_b.rescale(k)?,
            },
        })
    }
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        return Ok(CertificateVerdict::Invalid(format!($($arg)*)))
    };
}

pub fn check_certificate(cert: &NonAdmissibilityCertificate) -> Result<CertificateVerdict> {
    match cert {
        NonAdmissibilityCertificate::Line { map, a, b, path_a, path_b } => check_line(map, a, b, path_a, path_b),
        NonAdmissibilityCertificate::Sequence { a, b, path_a, path_b } => check_sequence(a, b, path_a, path_b),
    }
}

fn check_line(
    map: &PiecewiseMonotoneMap,
    a: &ExtPoint,
    b: &ExtPoint,
    path_a: &LinePath,
    path_b: &LinePath,
) -> Result<CertificateVerdict> {
    let space = map.space();
    if a == b {
        invalid!("the two points coincide");
    }
    for p in [a, b] {
        if !space.contains(p) {
            invalid!("{p} is not a point of the space");
        }
    }
    let (fa, fb) = (map.apply(a)?, map.apply(b)?);
    if fa != fb {
        invalid!("images differ: {a} ↦ {fa}, {b} ↦ {fb}");
    }
    for (name, path, target) in [("path_a", path_a, a), ("path_b", path_b, b)] {
        if &path.limit != target {
            invalid!("{name} is declared to converge to {} rather than {target}", path.limit);
        }
        let Ok(comp) = space.component(path.component) else {
            invalid!("{name} lies in an unknown component");
        };
        if let Some(t) = path.leaves(comp) {
            invalid!("{name} leaves the space at t = {t}");
        }
        let lim = ExtPoint::new(path.component, path.order_limit(comp));
        if lim != path.limit {
            invalid!("{name} converges to {lim}, not {}", path.limit);
        }
        if let Some(t) = shared_fibre(map, comp, path)? {
            invalid!("{name} at t = {t} shares its fibre with another point");
        }
    }
    Ok(CertificateVerdict::Valid)
}

/// A parameter at which the path point is not alone in its fibre.
fn shared_fibre(map: &PiecewiseMonotoneMap, comp: &Component, path: &LinePath) -> Result<Option<Rational>> {
    let (min, max) = path.value_range();
    if path.value.slope.is_zero() {
        let x = path.at(&path.lo);
        let n = map.preimage(&map.apply(&x)?)?.len();
        return Ok((n != 1).then(|| path.lo.clone()));
    }
    let extra: Vec<ExtPoint> = [comp.point_at(&min, Side::Plus), comp.point_at(&max, Side::Minus)]
        .into_iter()
        .filter(|c| comp.contains(c))
        .map(|c| ExtPoint::new(comp.id, c))
        .collect();
    let complex = CellComplex::build(map, &extra, &[])?;
    let range = OrderInterval::new(comp.id, Bound::Open(Coord::plus(min)), Bound::Open(Coord::minus(max)));
    for s in &complex.source {
        let x = s.cell.representative();
        if range.contains(&x) && complex.target[s.image].multiplicity() != 1 {
            let v = x.value().expect("finite inside a bounded range");
            return Ok(Some(path.param_of(v)));
        }
    }
    Ok(None)
}

fn check_sequence(a: &SeqPoint, b: &SeqPoint, path_a: &SeqPath, path_b: &SeqPath) -> Result<CertificateVerdict> {
    if a == b {
        invalid!("the two points coincide");
    }
    for p in [a, b] {
        if !p.in_z() {
            invalid!("{p} is not in Z");
        }
    }
    let (fa, fb) = (seq_apply(a)?, seq_apply(b)?);
    if fa != fb {
        invalid!("images differ: {fa} and {fb}");
    }
    for (name, path, target) in [("path_a", path_a, a), ("path_b", path_b, b)] {
        if &path.limit != target {
            invalid!("{name} is declared to converge to {} rather than {target}", path.limit);
        }
        if let Some((t, n)) = path.leaves_z() {
            invalid!("{name} leaves Z at t = {t} (coordinate {n})");
        }
        let lim = path.endpoint_value()?;
        if lim != path.limit {
            invalid!("{name} converges to {lim}, not {}", path.limit);
        }
        if let Some(t) = path.fibre_not_unique() {
            invalid!("{name} at t = {t} shares its fibre with another point");
        }
    }
    Ok(CertificateVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::*;
    use crate::rational::{int, rat};
    use crate::seqspace::{w_path, y_path};

    fn line_cert(
        map: PiecewiseMonotoneMap,
        a: Coord,
        b: Coord,
        pa: Affine,
        pb: Affine,
        lo: Rational,
        hi: Rational,
    ) -> NonAdmissibilityCertificate {
        let c = ComponentId(0);
        let (a, b) = (ExtPoint::new(c, a), ExtPoint::new(c, b));
        NonAdmissibilityCertificate::Line {
            map,
            path_a: LinePath {
                component: c,
                value: pa,
                lo: lo.clone(),
                hi: hi.clone(),
                limit_at: PathEnd::Lo,
                limit: a.clone(),
            },
            path_b: LinePath { component: c, value: pb, lo, hi, limit_at: PathEnd::Lo, limit: b.clone() },
            a,
            b,
        }
    }

    #[test]
    fn gallery_certificates_are_valid() {
        for cert in [not_admiss2_certificate(), not_admiss_seq_certificate()] {
            assert_eq!(check_certificate(&cert).unwrap(), CertificateVerdict::Valid);
            let half = cert.rescale(&rat(1, 2)).unwrap();
            assert_eq!(check_certificate(&half).unwrap(), CertificateVerdict::Valid);
            let twice = cert.rescale(&int(2)).unwrap();
            assert_eq!(check_certificate(&twice).unwrap(), CertificateVerdict::Valid);
        }
    }

    #[test]
    fn identity_map_rejects() {
        let sp = admiss_csli_space();
        let cert = line_cert(
            PiecewiseMonotoneMap::identity(&sp),
            Coord::minus(int(0)),
            Coord::plus(int(0)),
            Affine::new(int(-1), int(0)),
            Affine::param(),
            int(0),
            int(1),
        );
        let CertificateVerdict::Invalid(why) = check_certificate(&cert).unwrap() else { panic!() };
        assert!(why.contains("images differ"), "{why}");
    }

    #[test]
    fn admissible_system_rejects() {
        // 0⁻ and 1 share a fibre, but points just below 0⁻ are doubled.
        let cert = line_cert(
            admiss_csli_map(),
            Coord::minus(int(0)),
            Coord::interior(int(1)),
            Affine::new(int(-1), int(0)),
            Affine::new(int(1), int(1)),
            int(0),
            rat(1, 2),
        );
        let CertificateVerdict::Invalid(why) = check_certificate(&cert).unwrap() else { panic!() };
        assert!(why.contains("path_a") && why.contains("fibre"), "{why}");
    }

    #[test]
    fn wrong_limits_and_exits() {
        // Approaching 0 from above gives 0⁺, not 0⁻.
        let cert = line_cert(
            not_admiss2_map(),
            Coord::minus(int(0)),
            Coord::plus(int(0)),
            Affine::param(),
            Affine::param(),
            int(0),
            int(1),
        );
        assert!(!check_certificate(&cert).unwrap().is_valid());
        // Crossing the cut at -1 leaves the space.
        let cert = line_cert(
            not_admiss2_map(),
            Coord::minus(int(0)),
            Coord::plus(int(0)),
            Affine::new(int(-1), int(0)),
            Affine::param(),
            int(0),
            int(2),
        );
        let CertificateVerdict::Invalid(why) = check_certificate(&cert).unwrap() else { panic!() };
        assert!(why.contains("t = 1"), "{why}");
    }

    #[test]
    fn sequence_certificate_failures() {
        let NonAdmissibilityCertificate::Sequence { a, b, path_a, .. } = not_admiss_seq_certificate() else { panic!() };
        let same = NonAdmissibilityCertificate::Sequence {
            a: a.clone(),
            b: a.clone(),
            path_a: path_a.clone(),
            path_b: path_a.clone(),
        };
        assert!(!check_certificate(&same).unwrap().is_valid());
        let mut long = w_path(1);
        long.hi = int(1);
        let cert = NonAdmissibilityCertificate::Sequence { a: a.clone(), b: b.clone(), path_a: y_path(), path_b: long };
        assert!(!check_certificate(&cert).unwrap().is_valid());
    }
}
