//! Constructors for the standard example systems.
//!
//! * `admiss_csli`: the line with every integer `n ≤ 0` doubled, `x ↦ x + 1`
//!   below `0⁻` (with `0⁻ ↦ 1`) and the identity from `0⁺` on. CSLI, not a
//!   local homeomorphism, admissible.
//! * `not_admiss2`: the same space, `x ↦ x + 1` on both halves with
//!   `0⁻ ↦ 1` and `0⁺ ↦ 1`. CSLI and not admissible.
//! * the shift-and-double map on eventually constant sequences (see
//!   [`crate::seqspace`]). CSLI and not admissible.
//! * [`DyadicTranslations`]: three components `X1 = [0⁺, +∞]`,
//!   `X2 = [-∞, 0⁻]`, `X3 = [-∞, 0⁻]` with all dyadic rationals doubled, and
//!   for every positive dyadic `d` the translation by `d` that carries the
//!   part of `X2`/`X3` above `(-d)⁺` into `X1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::certificates::{LinePath, NonAdmissibilityCertificate};
use crate::error::{Error, Result};
use crate::function::PiecewiseFunction;
use crate::maps::{Piece, PiecewiseMonotoneMap};
use crate::poly::Poly;
use crate::rational::{int, is_dyadic, rat, Rational};
use crate::seqspace::{w0, w_path, y0, y_path, Affine, PathEnd};
use crate::space::{Bound, Component, ComponentId, Coord, CutSpec, ExtPoint, OrderInterval, OrderedCutSpace};

const LINE: ComponentId = ComponentId(0);

pub const X1: ComponentId = ComponentId(0);
pub const X2: ComponentId = ComponentId(1);
pub const X3: ComponentId = ComponentId(2);

/// The compactified line with every integer `n ≤ 0` doubled.
pub fn admiss_csli_space() -> OrderedCutSpace {
    OrderedCutSpace::new(vec![Component::new(LINE, Coord::NegInf, Coord::PosInf, CutSpec::integers_at_most(0))])
        .expect("valid space")
}

fn line_point(c: Coord) -> ExtPoint {
    ExtPoint::new(LINE, c)
}

fn closed(lo: Coord, hi: Coord) -> OrderInterval {
    OrderInterval::closed(LINE, lo, hi)
}

pub fn admiss_csli_map() -> PiecewiseMonotoneMap {
    let pieces = vec![
        Piece::new(closed(Coord::NegInf, Coord::minus(int(0))), LINE, int(1), int(1)),
        Piece::new(closed(Coord::plus(int(0)), Coord::PosInf), LINE, int(1), int(0)),
    ];
    let mut overrides = BTreeMap::new();
    overrides.insert(line_point(Coord::minus(int(0))), line_point(Coord::interior(int(1))));
    PiecewiseMonotoneMap::new(admiss_csli_space(), pieces, overrides).expect("valid map")
}

/// `1` on `[0⁺, +∞]`, `0` on `[-1⁺, 0⁻]`, `1` on `[-∞, -1⁻]`.
pub fn admiss_csli_cocycle() -> PiecewiseFunction {
    PiecewiseFunction::from_spans(
        &admiss_csli_space(),
        vec![
            (closed(Coord::NegInf, Coord::minus(int(-1))), Poly::one()),
            (closed(Coord::plus(int(-1)), Coord::minus(int(0))), Poly::zero()),
            (closed(Coord::plus(int(0)), Coord::PosInf), Poly::one()),
        ],
    )
    .expect("valid function")
}

/// `1` on `[-∞, -1⁻]`, `-x` on `[-1⁺, 0⁻]`, `x` on `[0⁺, 1]`, `1` above.
pub fn admiss_nondeg_cocycle() -> PiecewiseFunction {
    let x = Poly::linear(int(1), int(0));
    PiecewiseFunction::from_spans(
        &admiss_csli_space(),
        vec![
            (closed(Coord::NegInf, Coord::minus(int(-1))), Poly::one()),
            (closed(Coord::plus(int(-1)), Coord::minus(int(0))), -x.clone()),
            (closed(Coord::plus(int(0)), Coord::interior(int(1))), x),
            (OrderInterval::new(LINE, Bound::Open(Coord::interior(int(1))), Bound::Closed(Coord::PosInf)), Poly::one()),
        ],
    )
    .expect("valid function")
}

/// The values prescribed at the doubled zero to obtain the nondegenerate
/// cocycle from the branch-selection one.
pub fn admiss_nondeg_pins() -> Vec<(ExtPoint, Rational)> {
    vec![(line_point(Coord::minus(int(0))), Rational::zero()), (line_point(Coord::plus(int(0))), Rational::zero())]
}

pub fn not_admiss2_map() -> PiecewiseMonotoneMap {
    let pieces = vec![
        Piece::new(closed(Coord::NegInf, Coord::minus(int(0))), LINE, int(1), int(1)),
        Piece::new(closed(Coord::plus(int(0)), Coord::PosInf), LINE, int(1), int(1)),
    ];
    let mut overrides = BTreeMap::new();
    overrides.insert(line_point(Coord::minus(int(0))), line_point(Coord::interior(int(1))));
    overrides.insert(line_point(Coord::plus(int(0))), line_point(Coord::interior(int(1))));
    PiecewiseMonotoneMap::new(admiss_csli_space(), pieces, overrides).expect("valid map")
}

/// `0⁻` and `0⁺` both map to `1`; `-t → 0⁻` and `t → 0⁺` as `t → 0`, and
/// every point on either path is alone in its fibre.
pub fn not_admiss2_certificate() -> NonAdmissibilityCertificate {
    let path = |slope: i64, limit: Coord| LinePath {
        component: LINE,
        value: Affine::new(int(slope), int(0)),
        lo: int(0),
        hi: int(1),
        limit_at: PathEnd::Lo,
        limit: line_point(limit),
    };
    NonAdmissibilityCertificate::Line {
        map: not_admiss2_map(),
        a: line_point(Coord::minus(int(0))),
        b: line_point(Coord::plus(int(0))),
        path_a: path(-1, Coord::minus(int(0))),
        path_b: path(1, Coord::plus(int(0))),
    }
}

/// The pair `y⁰`, `w⁰` of the shift-and-double system with the paths
/// `y(t) → y⁰` (`t → 1`) and `w(t) → w⁰` (`t → 0`).
pub fn not_admiss_seq_certificate() -> NonAdmissibilityCertificate {
    NonAdmissibilityCertificate::Sequence { a: y0(), b: w0(), path_a: y_path(), path_b: w_path(1) }
}

/// The translation family on `X1 ∪ X2 ∪ X3` indexed by positive dyadics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicTranslations {
    space: OrderedCutSpace,
}

impl Default for DyadicTranslations {
    fn default() -> Self {
        Self::new()
    }
}

impl DyadicTranslations {
    pub fn new() -> Self {
        let space = OrderedCutSpace::new(vec![
            Component::new(X1, Coord::plus(int(0)), Coord::PosInf, CutSpec::AllDyadics),
            Component::new(X2, Coord::NegInf, Coord::minus(int(0)), CutSpec::AllDyadics),
            Component::new(X3, Coord::NegInf, Coord::minus(int(0)), CutSpec::AllDyadics),
        ])
        .expect("valid space");
        DyadicTranslations { space }
    }

    pub fn space(&self) -> &OrderedCutSpace {
        &self.space
    }

    fn check(d: &Rational) -> Result<()> {
        if d.is_positive() && is_dyadic(d) {
            Ok(())
        } else {
            Err(Error::ResolverGap(format!("{d} is not a positive dyadic rational")))
        }
    }

    pub fn map(&self, d: &Rational) -> Result<PiecewiseMonotoneMap> {
        Self::check(d)?;
        let minus_d = -d.clone();
        let mut pieces = vec![Piece::new(
            OrderInterval::closed(X1, Coord::plus(int(0)), Coord::PosInf),
            X1,
            Rational::one(),
            d.clone(),
        )];
        for c in [X2, X3] {
            pieces.push(Piece::new(
                OrderInterval::closed(c, Coord::NegInf, Coord::minus(minus_d.clone())),
                c,
                Rational::one(),
                d.clone(),
            ));
            pieces.push(Piece::new(
                OrderInterval::closed(c, Coord::plus(minus_d.clone()), Coord::minus(int(0))),
                X1,
                Rational::one(),
                d.clone(),
            ));
        }
        PiecewiseMonotoneMap::new(self.space.clone(), pieces, BTreeMap::new())
    }

    /// `1/2` on `[(-d)⁺, 0⁻]` in `X2` and `X3`, `1` elsewhere.
    pub fn cocycle(&self, d: &Rational) -> Result<PiecewiseFunction> {
        Self::check(d)?;
        let minus_d = -d.clone();
        let mut spans = vec![(OrderInterval::closed(X1, Coord::plus(int(0)), Coord::PosInf), Poly::one())];
        for c in [X2, X3] {
            spans.push((OrderInterval::closed(c, Coord::NegInf, Coord::minus(minus_d.clone())), Poly::one()));
            spans.push((
                OrderInterval::closed(c, Coord::plus(minus_d.clone()), Coord::minus(int(0))),
                Poly::constant(rat(1, 2)),
            ));
        }
        PiecewiseFunction::from_spans(&self.space, spans)
    }

    /// `0̂⁻` and `0̃⁻`, the pair identified by every map of the family.
    pub fn collision_pair() -> (ExtPoint, ExtPoint) {
        (ExtPoint::new(X2, Coord::minus(int(0))), ExtPoint::new(X3, Coord::minus(int(0))))
    }
}
