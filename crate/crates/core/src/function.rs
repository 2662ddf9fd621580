//! Piecewise polynomial functions on a cut-line space.
//!
//! A function is stored on a cell decomposition of every component: point
//! cells carry a value, open cells carry a polynomial in the coordinate.
//! Open cells reaching an infinity must carry constants, so every function
//! is bounded and has limits at the compactification points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::maps::Continuity;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::space::{Bound, Cell, Coord, ExtPoint, OrderInterval, OrderedCutSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnCell {
    pub cell: Cell,
    /// Constant for point cells.
    pub poly: Poly,
}

impl FnCell {
    /// The value at a point of this cell's closure.
    pub fn value_at(&self, c: &Coord) -> Rational {
        eval_at(&self.poly, c)
    }
}

/// `p` at a coordinate; at an infinity only constants are meaningful.
pub(crate) fn eval_at(p: &Poly, c: &Coord) -> Rational {
    match c {
        Coord::Finite(v, _) => p.eval(v),
        _ => p.constant_term(),
    }
}

fn cell_bounded(cell: &Cell) -> bool {
    match cell {
        Cell::Point(_) => true,
        Cell::Open { lo, hi, .. } => lo.is_finite() && hi.is_finite(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFunction {
    space: OrderedCutSpace,
    cells: Vec<FnCell>,
}

impl PiecewiseFunction {
    /// Builds a function from cells produced by [`OrderedCutSpace::cells`],
    /// in component order.
    pub(crate) fn from_cells(space: OrderedCutSpace, cells: Vec<FnCell>) -> Result<Self> {
        for c in &cells {
            if !cell_bounded(&c.cell) && !c.poly.is_constant() {
                return Err(Error::InvalidFunction(format!(
                    "non-constant polynomial on the unbounded cell {}",
                    c.cell
                )));
            }
        }
        Ok(PiecewiseFunction { space, cells })
    }

    pub fn constant(space: &OrderedCutSpace, c: Rational) -> Self {
        let cells = space
            .components()
            .iter()
            .flat_map(|comp| space.cells(comp.id, []).expect("known component"))
            .map(|cell| FnCell { cell, poly: Poly::constant(c.clone()) })
            .collect();
        PiecewiseFunction { space: space.clone(), cells }
    }

    /// A function given as polynomials on intervals that partition the space.
    pub fn from_spans(space: &OrderedCutSpace, spans: Vec<(OrderInterval, Poly)>) -> Result<Self> {
        for (iv, _) in &spans {
            space.check_interval(iv)?;
            if iv.is_empty() {
                return Err(Error::InvalidFunction(format!("empty interval {iv}")));
            }
        }
        let mut cells = Vec::new();
        for comp in space.components() {
            let bps: Vec<Coord> = spans
                .iter()
                .filter(|(iv, _)| iv.component == comp.id)
                .flat_map(|(iv, _)| [iv.lo().coord().clone(), iv.hi().coord().clone()])
                .collect();
            for cell in space.cells(comp.id, bps)? {
                let rep = cell.representative();
                let mut owners = spans.iter().filter(|(iv, _)| iv.contains(&rep));
                let (iv, poly) =
                    owners.next().ok_or_else(|| Error::InvalidFunction(format!("no piece covers {rep}")))?;
                if owners.next().is_some() {
                    return Err(Error::InvalidFunction(format!("pieces overlap at {rep}")));
                }
                let unbounded = !iv.lo().coord().is_finite() || !iv.hi().coord().is_finite();
                if unbounded && !poly.is_constant() {
                    return Err(Error::InvalidFunction(format!("non-constant polynomial on unbounded piece {iv}")));
                }
                let poly = match &cell {
                    Cell::Point(p) => Poly::constant(eval_at(poly, &p.coord)),
                    Cell::Open { .. } => poly.clone(),
                };
                cells.push(FnCell { cell, poly });
            }
        }
        Ok(PiecewiseFunction { space: space.clone(), cells })
    }

    pub fn space(&self) -> &OrderedCutSpace {
        &self.space
    }

    pub fn cells(&self) -> &[FnCell] {
        &self.cells
    }

    /// Point cells of the decomposition.
    pub fn breakpoints(&self) -> Vec<ExtPoint> {
        self.cells
            .iter()
            .filter_map(|c| match &c.cell {
                Cell::Point(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn locate(&self, p: &ExtPoint) -> Result<&FnCell> {
        self.cells
            .iter()
            .find(|c| match &c.cell {
                Cell::Point(q) => q == p,
                Cell::Open { component, lo, hi, .. } => *component == p.component && lo < &p.coord && &p.coord < hi,
            })
            .ok_or_else(|| Error::PointOutsideSpace(p.clone()))
    }

    pub fn eval(&self, p: &ExtPoint) -> Result<Rational> {
        self.space.check_point(p)?;
        Ok(self.locate(p)?.value_at(&p.coord))
    }

    /// The same function on a decomposition that also has point cells at `extra`.
    pub fn refine(&self, extra: &[ExtPoint]) -> Result<PiecewiseFunction> {
        let mut bps: BTreeSet<ExtPoint> = self.breakpoints().into_iter().collect();
        for p in extra {
            if self.space.contains(p) {
                bps.insert(p.clone());
            }
        }
        self.rebuild(&bps)
    }

    fn rebuild(&self, bps: &BTreeSet<ExtPoint>) -> Result<PiecewiseFunction> {
        let mut cells = Vec::new();
        for comp in self.space.components() {
            let coords = bps.iter().filter(|p| p.component == comp.id).map(|p| p.coord.clone());
            for cell in self.space.cells(comp.id, coords)? {
                let rep = cell.representative();
                let owner = self.locate(&rep)?;
                let poly = match &cell {
                    Cell::Point(p) => Poly::constant(owner.value_at(&p.coord)),
                    Cell::Open { .. } => owner.poly.clone(),
                };
                cells.push(FnCell { cell, poly });
            }
        }
        Ok(PiecewiseFunction { space: self.space.clone(), cells })
    }

    /// Combines two functions cellwise on their common refinement.
    pub fn zip_with(&self, other: &PiecewiseFunction, op: impl Fn(&Poly, &Poly) -> Poly) -> Result<PiecewiseFunction> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut bps: BTreeSet<ExtPoint> = self.breakpoints().into_iter().collect();
        bps.extend(other.breakpoints());
        let a = self.rebuild(&bps)?;
        let b = other.rebuild(&bps)?;
        let cells = a
            .cells
            .into_iter()
            .zip(b.cells)
            .map(|(x, y)| FnCell { poly: op(&x.poly, &y.poly), cell: x.cell })
            .collect();
        PiecewiseFunction::from_cells(self.space.clone(), cells)
    }

    pub fn add(&self, other: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &PiecewiseFunction) -> Result<PiecewiseFunction> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, k: &Rational) -> PiecewiseFunction {
        let cells = self.cells.iter().map(|c| FnCell { cell: c.cell.clone(), poly: c.poly.scale(k) }).collect();
        PiecewiseFunction { space: self.space.clone(), cells }
    }

    /// First point of disagreement with `other`, or `None` when the two
    /// functions are equal everywhere.
    pub fn first_difference(&self, other: &PiecewiseFunction) -> Result<Option<ExtPoint>> {
        let d = self.sub(other)?;
        Ok(d.cells.iter().find(|c| !c.poly.is_zero()).map(|c| c.cell.representative()))
    }

    pub fn same_function(&self, other: &PiecewiseFunction) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// Value at a point cell against the limits of the neighbouring open cells.
    pub fn check_continuity(&self) -> Continuity {
        for (i, c) in self.cells.iter().enumerate() {
            let Cell::Point(p) = &c.cell else { continue };
            let v = c.poly.constant_term();
            let neighbours = [i.checked_sub(1).and_then(|j| self.cells.get(j)), self.cells.get(i + 1)];
            for n in neighbours.into_iter().flatten() {
                if matches!(&n.cell, Cell::Open { component, .. } if *component == p.component)
                    && n.value_at(&p.coord) != v
                {
                    return Continuity::Violation(p.clone());
                }
            }
        }
        Continuity::Ok
    }

    /// The closure of the first cell on which the function takes a negative
    /// value, if any.
    pub fn negative_cell(&self) -> Option<OrderInterval> {
        self.cells.iter().find(|c| !cell_nonneg(c)).map(|c| c.cell.as_interval())
    }

    /// The first cell on which the infimum is not positive, if any.
    pub fn nonpositive_cell(&self) -> Option<OrderInterval> {
        self.cells.iter().find(|c| !cell_positive(c)).map(|c| c.cell.as_interval())
    }

    /// An open cell on which the function vanishes identically.
    pub fn zero_open_cell(&self) -> Option<OrderInterval> {
        self.cells.iter().find(|c| !c.cell.is_point() && c.poly.is_zero()).map(|c| c.cell.as_interval())
    }

    /// A compact listing: maximal intervals carrying one polynomial.
    pub fn spans(&self) -> Vec<(OrderInterval, Poly)> {
        struct Span {
            lo: Bound,
            hi: Bound,
            poly: Poly,
            point_only: bool,
        }
        let mut out: Vec<(OrderInterval, Poly)> = Vec::new();
        for comp in self.space.components() {
            let mut spans: Vec<Span> = Vec::new();
            for c in self.cells.iter().filter(|c| c.cell.component() == comp.id) {
                match &c.cell {
                    Cell::Point(p) => {
                        let v = c.poly.constant_term();
                        if let Some(last) = spans.last_mut() {
                            if last.hi == Bound::Open(p.coord.clone()) && eval_at(&last.poly, &p.coord) == v {
                                last.hi = Bound::Closed(p.coord.clone());
                                continue;
                            }
                        }
                        spans.push(Span {
                            lo: Bound::Closed(p.coord.clone()),
                            hi: Bound::Closed(p.coord.clone()),
                            poly: c.poly.clone(),
                            point_only: true,
                        });
                    }
                    Cell::Open { lo, hi, .. } => {
                        if let Some(last) = spans.last_mut() {
                            let joins = last.hi == Bound::Closed(lo.clone())
                                && (last.poly == c.poly
                                    || last.point_only && eval_at(&c.poly, lo) == last.poly.constant_term());
                            if joins {
                                last.hi = Bound::Open(hi.clone());
                                last.poly = c.poly.clone();
                                last.point_only = false;
                                continue;
                            }
                        }
                        spans.push(Span {
                            lo: Bound::Open(lo.clone()),
                            hi: Bound::Open(hi.clone()),
                            poly: c.poly.clone(),
                            point_only: false,
                        });
                    }
                }
            }
            out.extend(spans.into_iter().map(|s| (OrderInterval::new(comp.id, s.lo, s.hi), s.poly)));
        }
        out
    }
}

fn closure_values(cell: &Cell) -> Option<(Rational, Rational)> {
    match cell {
        Cell::Open { lo: Coord::Finite(a, _), hi: Coord::Finite(b, _), .. } => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn cell_nonneg(c: &FnCell) -> bool {
    match closure_values(&c.cell) {
        Some((a, b)) => c.poly.nonneg_on_closed(&a, &b),
        None => !c.poly.constant_term().is_negative(),
    }
}

fn cell_positive(c: &FnCell) -> bool {
    match closure_values(&c.cell) {
        Some((a, b)) => c.poly.positive_on_closed(&a, &b),
        None => c.poly.constant_term().is_positive(),
    }
}

impl fmt::Display for PiecewiseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (iv, p) in self.spans() {
            writeln!(f, "{iv}: {p}")?;
        }
        Ok(())
    }
}
