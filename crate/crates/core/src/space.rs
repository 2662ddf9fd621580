//! Ordered cut-line spaces.
//!
//! A space is a finite disjoint union of components. Each component is an
//! order interval of the rationals, optionally compactified by `-∞` and/or
//! `+∞`, in which every value `c` matching the component's [`CutSpec`] is
//! replaced by two points `c⁻ < c⁺` with nothing in between. Sets of the
//! form `[c⁺, b)` are then open, which is what makes level sets clopen.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, is_dyadic, rat, Rational, SAMPLE_DIVISORS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(pub u32);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Side tag of a finite point. Cut values carry `Minus`/`Plus`, all other
/// values carry `Interior`. The derived order puts `c⁻ < c⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Interior,
    Plus,
}

impl Side {
    /// The side seen through an order-reversing affine map.
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Interior => Side::Interior,
            Side::Plus => Side::Minus,
        }
    }
}

/// Position of a point inside its component. The derived order is the
/// order of the space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    NegInf,
    Finite(Rational, Side),
    PosInf,
}

impl Coord {
    pub fn interior(v: Rational) -> Coord {
        Coord::Finite(v, Side::Interior)
    }

    pub fn minus(v: Rational) -> Coord {
        Coord::Finite(v, Side::Minus)
    }

    pub fn plus(v: Rational) -> Coord {
        Coord::Finite(v, Side::Plus)
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Coord::Finite(v, _) => Some(v),
            _ => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            Coord::Finite(_, s) => Some(*s),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Coord::Finite(..))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::NegInf => write!(f, "-inf"),
            Coord::PosInf => write!(f, "+inf"),
            Coord::Finite(v, Side::Interior) => write!(f, "{v}"),
            Coord::Finite(v, Side::Minus) => write!(f, "{v}-"),
            Coord::Finite(v, Side::Plus) => write!(f, "{v}+"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtPoint {
    pub component: ComponentId,
    pub coord: Coord,
}

impl ExtPoint {
    pub fn new(component: ComponentId, coord: Coord) -> Self {
        ExtPoint { component, coord }
    }

    pub fn value(&self) -> Option<&Rational> {
        self.coord.value()
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.coord, self.component)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Order comparison: total inside a component, incomparable across.
pub fn compare(p: &ExtPoint, q: &ExtPoint) -> PointOrder {
    if p.component != q.component {
        return PointOrder::Incomparable;
    }
    match p.coord.cmp(&q.coord) {
        Ordering::Less => PointOrder::Less,
        Ordering::Equal => PointOrder::Equal,
        Ordering::Greater => PointOrder::Greater,
    }
}

/// True iff `p` is some `c⁻`, whose immediate successor is `c⁺`.
pub fn has_immediate_successor(p: &ExtPoint) -> bool {
    p.coord.side() == Some(Side::Minus)
}

/// True iff `p` is some `c⁺`, whose immediate predecessor is `c⁻`.
pub fn has_immediate_predecessor(p: &ExtPoint) -> bool {
    p.coord.side() == Some(Side::Plus)
}

/// Which rational values of a component are doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutSpec {
    /// Kept sorted and free of duplicates.
    FiniteSet(Vec<Rational>),
    IntegersAtMost(Rational),
    AllDyadics,
    AllIntegers,
}

impl CutSpec {
    pub fn finite(values: impl IntoIterator<Item = Rational>) -> CutSpec {
        let set: BTreeSet<Rational> = values.into_iter().collect();
        CutSpec::FiniteSet(set.into_iter().collect())
    }

    pub fn integers_at_most(bound: i64) -> CutSpec {
        CutSpec::IntegersAtMost(int(bound))
    }

    pub fn none() -> CutSpec {
        CutSpec::FiniteSet(Vec::new())
    }

    pub fn is_cut(&self, v: &Rational) -> bool {
        match self {
            CutSpec::FiniteSet(vs) => vs.binary_search(v).is_ok(),
            CutSpec::IntegersAtMost(b) => v.is_integer() && v <= b,
            CutSpec::AllDyadics => is_dyadic(v),
            CutSpec::AllIntegers => v.is_integer(),
        }
    }

    /// All cut values in the closed range `[a, b]`, or `None` when the cut
    /// set is dense there and cannot be listed.
    pub fn enumerate(&self, a: &Rational, b: &Rational) -> Option<Vec<Rational>> {
        if a > b {
            return Some(Vec::new());
        }
        let integers = |upper: &Rational| {
            let mut out = Vec::new();
            let mut k = a.ceil();
            while &k <= upper {
                out.push(k.clone());
                k += Rational::one();
            }
            out
        };
        match self {
            CutSpec::FiniteSet(vs) => Some(vs.iter().filter(|v| *v >= a && *v <= b).cloned().collect()),
            CutSpec::IntegersAtMost(bound) => Some(integers(bound.min(b))),
            CutSpec::AllIntegers => Some(integers(b)),
            CutSpec::AllDyadics => None,
        }
    }

    /// True when `enumerate` is available.
    pub fn is_enumerable(&self) -> bool {
        !matches!(self, CutSpec::AllDyadics)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: ComponentId,
    pub left_end: Coord,
    pub right_end: Coord,
    pub cuts: CutSpec,
}

impl Component {
    pub fn new(id: ComponentId, left_end: Coord, right_end: Coord, cuts: CutSpec) -> Self {
        Component { id, left_end, right_end, cuts }
    }

    /// Whether `c` is a point of this component.
    pub fn contains(&self, c: &Coord) -> bool {
        if c < &self.left_end || c > &self.right_end {
            return false;
        }
        match c {
            Coord::NegInf => self.left_end == Coord::NegInf,
            Coord::PosInf => self.right_end == Coord::PosInf,
            Coord::Finite(v, side) => (*side == Side::Interior) != self.cuts.is_cut(v),
        }
    }

    /// `c` is approached by points strictly below it.
    pub fn accumulates_from_left(&self, c: &Coord) -> bool {
        c != &self.left_end && c.side() != Some(Side::Plus)
    }

    /// `c` is approached by points strictly above it.
    pub fn accumulates_from_right(&self, c: &Coord) -> bool {
        c != &self.right_end && c.side() != Some(Side::Minus)
    }

    /// The point of this component with value `v`, approached from `side`.
    /// For a non-cut value the side is irrelevant and `Interior` is used.
    pub fn point_at(&self, v: &Rational, side: Side) -> Coord {
        if self.cuts.is_cut(v) {
            debug_assert!(side != Side::Interior);
            Coord::Finite(v.clone(), side)
        } else {
            Coord::interior(v.clone())
        }
    }

    /// A non-cut rational strictly between the open-cell bounds `lo < hi`.
    pub fn sample_between(&self, lo: &Coord, hi: &Coord) -> Rational {
        let candidates: Vec<Rational> = match (lo.value(), hi.value()) {
            (Some(a), Some(b)) => SAMPLE_DIVISORS.iter().map(|p| a + (b - a) / int(*p)).collect(),
            (Some(a), None) => SAMPLE_DIVISORS.iter().map(|p| a + int(1) + rat(1, *p)).collect(),
            (None, Some(b)) => SAMPLE_DIVISORS.iter().map(|p| b - int(1) - rat(1, *p)).collect(),
            (None, None) => SAMPLE_DIVISORS.iter().map(|p| rat(1, *p)).collect(),
        };
        for v in candidates.iter() {
            let c = Coord::interior(v.clone());
            if &c > lo && &c < hi && !self.cuts.is_cut(v) {
                return v.clone();
            }
        }
        // Odd-denominator fractions are never dyadic or integral; a finite cut
        // set cannot contain all twelve candidates unless the caller passed an
        // empty cell.
        panic!("no sample point between {lo} and {hi}")
    }
}

/// A compact ordered cut-line space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedCutSpace {
    components: Vec<Component>,
}

impl OrderedCutSpace {
    pub fn new(mut components: Vec<Component>) -> Result<Self> {
        components.sort_by_key(|c| c.id);
        for w in components.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidSpace(format!("duplicate component id {}", w[0].id)));
            }
        }
        for c in &components {
            if c.left_end >= c.right_end {
                return Err(Error::InvalidSpace(format!("component {}: left end must lie below right end", c.id)));
            }
            if c.left_end == Coord::PosInf || c.right_end == Coord::NegInf {
                return Err(Error::InvalidSpace(format!("component {}: misplaced infinity", c.id)));
            }
            for end in [&c.left_end, &c.right_end] {
                if !c.contains(end) {
                    return Err(Error::InvalidSpace(format!(
                        "component {}: endpoint {end} does not match the cut specification",
                        c.id
                    )));
                }
            }
        }
        Ok(OrderedCutSpace { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component> {
        self.components
            .binary_search_by_key(&id, |c| c.id)
            .map(|i| &self.components[i])
            .map_err(|_| Error::UnknownComponent(id))
    }

    pub fn contains(&self, p: &ExtPoint) -> bool {
        self.component(p.component).is_ok_and(|c| c.contains(&p.coord))
    }

    pub fn check_point(&self, p: &ExtPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointOutsideSpace(p.clone()))
        }
    }

    pub fn check_interval(&self, iv: &OrderInterval) -> Result<()> {
        let comp = self.component(iv.component)?;
        for b in [&iv.lo, &iv.hi] {
            if !comp.contains(b.coord()) {
                return Err(Error::PointOutsideSpace(ExtPoint::new(iv.component, b.coord().clone())));
            }
        }
        Ok(())
    }

    /// The whole of component `id` as an interval.
    pub fn full(&self, id: ComponentId) -> Result<OrderInterval> {
        let c = self.component(id)?;
        Ok(OrderInterval::closed(id, c.left_end.clone(), c.right_end.clone()))
    }

    /// The whole space as one interval per component.
    pub fn all(&self) -> Vec<OrderInterval> {
        self.components.iter().map(|c| OrderInterval::closed(c.id, c.left_end.clone(), c.right_end.clone())).collect()
    }

    /// Decomposes component `id` into point cells at the given breakpoints
    /// (plus both ends) and the nonempty open cells between them.
    pub fn cells(&self, id: ComponentId, breakpoints: impl IntoIterator<Item = Coord>) -> Result<Vec<Cell>> {
        let comp = self.component(id)?;
        let mut pts: BTreeSet<Coord> = BTreeSet::new();
        pts.insert(comp.left_end.clone());
        pts.insert(comp.right_end.clone());
        for b in breakpoints {
            if comp.contains(&b) {
                pts.insert(b);
            }
        }
        let pts: Vec<Coord> = pts.into_iter().collect();
        let mut out = Vec::with_capacity(2 * pts.len());
        for (i, p) in pts.iter().enumerate() {
            out.push(Cell::Point(ExtPoint::new(id, p.clone())));
            if let Some(q) = pts.get(i + 1) {
                if !is_gap(p, q) {
                    let sample = comp.sample_between(p, q);
                    out.push(Cell::Open { component: id, lo: p.clone(), hi: q.clone(), sample });
                }
            }
        }
        Ok(out)
    }
}

/// `p < q` with no point strictly between them: `p = c⁻`, `q = c⁺`.
pub fn is_gap(p: &Coord, q: &Coord) -> bool {
    matches!((p, q), (Coord::Finite(a, Side::Minus), Coord::Finite(b, Side::Plus)) if a == b)
}

/// One piece of a finite decomposition of a component: either a single
/// point or the open interval strictly between two consecutive breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Point(ExtPoint),
    Open { component: ComponentId, lo: Coord, hi: Coord, sample: Rational },
}

impl Cell {
    pub fn component(&self) -> ComponentId {
        match self {
            Cell::Point(p) => p.component,
            Cell::Open { component, .. } => *component,
        }
    }

    /// A representative point: the point itself or a non-cut interior sample.
    pub fn representative(&self) -> ExtPoint {
        match self {
            Cell::Point(p) => p.clone(),
            Cell::Open { component, sample, .. } => ExtPoint::new(*component, Coord::interior(sample.clone())),
        }
    }

    pub fn as_interval(&self) -> OrderInterval {
        match self {
            Cell::Point(p) => OrderInterval::point(p),
            Cell::Open { component, lo, hi, .. } => {
                OrderInterval::new(*component, Bound::Open(lo.clone()), Bound::Open(hi.clone()))
            }
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Cell::Point(_))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Point(p) => write!(f, "{{{p}}}"),
            Cell::Open { component, lo, hi, .. } => write!(f, "({lo}, {hi})@{component}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Closed(Coord),
    Open(Coord),
}

impl Bound {
    pub fn coord(&self) -> &Coord {
        match self {
            Bound::Closed(c) | Bound::Open(c) => c,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    fn lower_key(&self) -> (&Coord, u8) {
        match self {
            Bound::Closed(c) => (c, 0),
            Bound::Open(c) => (c, 1),
        }
    }

    fn upper_key(&self) -> (&Coord, u8) {
        match self {
            Bound::Closed(c) => (c, 1),
            Bound::Open(c) => (c, 0),
        }
    }
}

/// An order interval of one component with closed or open ends.
///
/// Construction canonicalizes ends at doubled points: the set strictly above
/// `c⁻` is the set from `c⁺` on, and strictly below `c⁺` is up to `c⁻`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderInterval {
    pub component: ComponentId,
    lo: Bound,
    hi: Bound,
}

impl OrderInterval {
    pub fn new(component: ComponentId, lo: Bound, hi: Bound) -> Self {
        let lo = match lo {
            Bound::Open(Coord::Finite(v, Side::Minus)) => Bound::Closed(Coord::Finite(v, Side::Plus)),
            b => b,
        };
        let hi = match hi {
            Bound::Open(Coord::Finite(v, Side::Plus)) => Bound::Closed(Coord::Finite(v, Side::Minus)),
            b => b,
        };
        OrderInterval { component, lo, hi }
    }

    pub fn closed(component: ComponentId, lo: Coord, hi: Coord) -> Self {
        OrderInterval::new(component, Bound::Closed(lo), Bound::Closed(hi))
    }

    pub fn point(p: &ExtPoint) -> Self {
        OrderInterval::closed(p.component, p.coord.clone(), p.coord.clone())
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo.lower_key() >= self.hi.upper_key()
    }

    /// A single point `[p, p]`.
    pub fn as_point(&self) -> Option<ExtPoint> {
        match (&self.lo, &self.hi) {
            (Bound::Closed(a), Bound::Closed(b)) if a == b => Some(ExtPoint::new(self.component, a.clone())),
            _ => None,
        }
    }

    pub fn contains(&self, p: &ExtPoint) -> bool {
        p.component == self.component && self.contains_coord(&p.coord)
    }

    pub fn contains_coord(&self, c: &Coord) -> bool {
        let above = match &self.lo {
            Bound::Closed(a) => c >= a,
            Bound::Open(a) => c > a,
        };
        let below = match &self.hi {
            Bound::Closed(b) => c <= b,
            Bound::Open(b) => c < b,
        };
        above && below
    }

    /// The intersection, or `None` when it is empty.
    pub fn intersect(&self, other: &OrderInterval) -> Option<OrderInterval> {
        if self.component != other.component {
            return None;
        }
        let lo = if self.lo.lower_key() >= other.lo.lower_key() { &self.lo } else { &other.lo };
        let hi = if self.hi.upper_key() <= other.hi.upper_key() { &self.hi } else { &other.hi };
        let iv = OrderInterval::new(self.component, lo.clone(), hi.clone());
        (!iv.is_empty()).then_some(iv)
    }

    /// True iff the interval contains more than one value (has nonempty
    /// interior in the order topology away from doubled gaps).
    pub fn has_distinct_values(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        match (self.lo.coord(), self.hi.coord()) {
            (Coord::Finite(a, _), Coord::Finite(b, _)) => a < b,
            (a, b) => a != b,
        }
    }

    fn sort_key(&self) -> (ComponentId, (&Coord, u8), (&Coord, u8)) {
        (self.component, self.lo.lower_key(), self.hi.upper_key())
    }
}

impl PartialOrd for OrderInterval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderInterval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for OrderInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, a) = match &self.lo {
            Bound::Closed(c) => ('[', c),
            Bound::Open(c) => ('(', c),
        };
        let (r, b) = match &self.hi {
            Bound::Closed(c) => (']', c),
            Bound::Open(c) => (')', c),
        };
        write!(f, "{l}{a}, {b}{r}@{}", self.component)
    }
}

/// How two consecutive disjoint-or-overlapping intervals meet.
enum Junction {
    Overlap,
    Touch,
    Apart,
}

fn junction(a: &OrderInterval, b: &OrderInterval) -> Junction {
    if a.component != b.component {
        return Junction::Apart;
    }
    let h = a.hi.upper_key();
    let l = b.lo.lower_key();
    if l < h {
        Junction::Overlap
    } else if l == h || is_gap(h.0, l.0) && h.1 == 1 && l.1 == 0 {
        Junction::Touch
    } else {
        Junction::Apart
    }
}

fn merge_sorted(mut ivs: Vec<OrderInterval>, allow_overlap: bool) -> Result<Vec<OrderInterval>> {
    ivs.retain(|iv| !iv.is_empty());
    ivs.sort();
    let mut out: Vec<OrderInterval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        if let Some(last) = out.last_mut() {
            match junction(last, &iv) {
                Junction::Overlap if !allow_overlap => {
                    return Err(Error::MalformedIntervals(format!("{last} overlaps {iv}")));
                }
                Junction::Overlap | Junction::Touch => {
                    if iv.hi.upper_key() > last.hi.upper_key() {
                        last.hi = iv.hi;
                    }
                    continue;
                }
                Junction::Apart => {}
            }
        }
        out.push(iv);
    }
    Ok(out)
}

/// Union of arbitrary intervals as a sorted list of maximal intervals.
pub fn union(ivs: impl IntoIterator<Item = OrderInterval>) -> Vec<OrderInterval> {
    merge_sorted(ivs.into_iter().collect(), true).expect("overlap is allowed")
}

/// Merges pairwise disjoint intervals into maximal runs; overlapping input
/// is rejected.
pub fn normalize(ivs: impl IntoIterator<Item = OrderInterval>) -> Result<Vec<OrderInterval>> {
    merge_sorted(ivs.into_iter().collect(), false)
}

/// Result of a clopen-ness query. `Undecidable` is part of the interface
/// for cut specifications that cannot be enumerated; the boundary test used
/// here is local and never needs enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clopen {
    Yes,
    No { boundary: ExtPoint },
    Undecidable,
}

impl Clopen {
    pub fn is_yes(&self) -> bool {
        matches!(self, Clopen::Yes)
    }
}

/// Decides whether the union of pairwise disjoint intervals is clopen in
/// `space`. Every finite boundary of the union must sit at a doubled gap
/// (`… c⁻] [c⁺ …`) or at a component end.
pub fn is_clopen(set: &[OrderInterval], space: &OrderedCutSpace) -> Result<Clopen> {
    for iv in set {
        space.check_interval(iv)?;
    }
    for iv in normalize(set.iter().cloned())? {
        let comp = space.component(iv.component)?;
        let lo_ok = match &iv.lo {
            Bound::Closed(c) => c == &comp.left_end || c.side() == Some(Side::Plus),
            Bound::Open(_) => false,
        };
        if !lo_ok {
            return Ok(Clopen::No { boundary: ExtPoint::new(iv.component, iv.lo.coord().clone()) });
        }
        let hi_ok = match &iv.hi {
            Bound::Closed(c) => c == &comp.right_end || c.side() == Some(Side::Minus),
            Bound::Open(_) => false,
        };
        if !hi_ok {
            return Ok(Clopen::No { boundary: ExtPoint::new(iv.component, iv.hi.coord().clone()) });
        }
    }
    Ok(Clopen::Yes)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C0: ComponentId = ComponentId(0);

    fn line_with_nonpositive_integer_cuts() -> OrderedCutSpace {
        OrderedCutSpace::new(alloc::vec![Component::new(
            C0,
            Coord::NegInf,
            Coord::PosInf,
            CutSpec::integers_at_most(0),
        )])
        .unwrap()
    }

    fn pt(c: Coord) -> ExtPoint {
        ExtPoint::new(C0, c)
    }

    #[test]
    fn doubled_points_are_ordered() {
        assert_eq!(compare(&pt(Coord::minus(int(0))), &pt(Coord::plus(int(0)))), PointOrder::Less);
        let x = pt(Coord::interior(rat(1, 2)));
        assert_eq!(compare(&x, &x), PointOrder::Equal);
        assert_eq!(compare(&x, &pt(Coord::interior(rat(3, 4)))), PointOrder::Less);
        assert_eq!(compare(&x, &ExtPoint::new(ComponentId(1), Coord::interior(rat(1, 2)))), PointOrder::Incomparable);
    }

    #[test]
    fn point_validity_follows_cut_predicate() {
        let s = line_with_nonpositive_integer_cuts();
        assert!(s.contains(&pt(Coord::minus(int(-3)))));
        assert!(!s.contains(&pt(Coord::interior(int(-3)))));
        assert!(s.contains(&pt(Coord::interior(int(1)))));
        assert!(!s.contains(&pt(Coord::plus(int(1)))));
        assert!(s.contains(&pt(Coord::NegInf)));
    }

    #[test]
    fn clopen_examples() {
        let s = line_with_nonpositive_integer_cuts();
        let a = OrderInterval::closed(C0, Coord::plus(int(-1)), Coord::minus(int(0)));
        assert!(is_clopen(&[a], &s).unwrap().is_yes());
        let b = OrderInterval::closed(C0, Coord::plus(int(0)), Coord::interior(int(1)));
        assert_eq!(is_clopen(&[b], &s).unwrap(), Clopen::No { boundary: pt(Coord::interior(int(1))) });
        assert!(is_clopen(&s.all(), &s).unwrap().is_yes());
    }

    #[test]
    fn clopen_stable_under_splitting_at_gap() {
        let s = line_with_nonpositive_integer_cuts();
        let whole = OrderInterval::closed(C0, Coord::plus(int(-3)), Coord::minus(int(0)));
        let left = OrderInterval::closed(C0, Coord::plus(int(-3)), Coord::minus(int(-1)));
        let right = OrderInterval::closed(C0, Coord::plus(int(-1)), Coord::minus(int(0)));
        assert_eq!(
            is_clopen(core::slice::from_ref(&whole), &s).unwrap(),
            is_clopen(&[left.clone(), right.clone()], &s).unwrap()
        );
        assert_eq!(normalize([right, left]).unwrap(), alloc::vec![whole]);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let s = line_with_nonpositive_integer_cuts();
        let a = OrderInterval::closed(C0, Coord::interior(rat(1, 2)), Coord::interior(int(2)));
        let b = OrderInterval::closed(C0, Coord::interior(int(1)), Coord::interior(int(3)));
        assert!(matches!(is_clopen(&[a, b], &s), Err(Error::MalformedIntervals(_))));
    }

    #[test]
    fn open_bounds_canonicalize_at_doubled_points() {
        let iv = OrderInterval::new(C0, Bound::Open(Coord::minus(int(0))), Bound::Open(Coord::plus(int(0))));
        assert!(iv.is_empty());
        let iv = OrderInterval::new(C0, Bound::Open(Coord::minus(int(0))), Bound::Closed(Coord::interior(int(1))));
        assert_eq!(iv.lo(), &Bound::Closed(Coord::plus(int(0))));
    }

    #[test]
    fn successor_only_at_minus_points() {
        assert!(has_immediate_successor(&pt(Coord::minus(int(0)))));
        assert!(!has_immediate_successor(&pt(Coord::interior(int(1)))));
        assert!(!has_immediate_successor(&pt(Coord::plus(int(0)))));
    }

    #[test]
    fn cells_skip_doubled_gaps() {
        let s = line_with_nonpositive_integer_cuts();
        let cells = s.cells(C0, [Coord::minus(int(0)), Coord::plus(int(0)), Coord::interior(int(1))]).unwrap();
        // -inf, (-inf,0-), 0-, 0+, (0+,1), 1, (1,+inf), +inf
        assert_eq!(cells.len(), 8);
        for c in &cells {
            assert!(s.contains(&c.representative()));
        }
    }

    #[test]
    fn enumeration_of_cuts() {
        let c = CutSpec::integers_at_most(0);
        assert_eq!(c.enumerate(&rat(-5, 2), &int(3)).unwrap(), alloc::vec![int(-2), int(-1), int(0)]);
        assert!(CutSpec::AllDyadics.enumerate(&int(0), &int(1)).is_none());
    }
}
