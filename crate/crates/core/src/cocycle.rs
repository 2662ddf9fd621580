//! Cocycles: nonnegative continuous weights whose sums over every fibre
//! equal one, and the transfer operators they define.
//!
//! For a weight `ω` on the source of `φ`, the transfer operator is
//! `𝓛f(y) = Σ_{φ(x)=y} ω(x) f(x)` and the conditional expectation is
//! `E(f) = (𝓛f)∘φ`. All computations are exact on piecewise polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::analysis::{csli_verdict, is_local_homeomorphism, LocalHomeo};
use crate::analysis::{locally_open_at, necessary_condition, CellComplex, NecessaryCondition, Sheet};
use crate::error::{Error, Result};
use crate::function::{eval_at, FnCell, PiecewiseFunction};
use crate::maps::{Continuity, PiecewiseMonotoneMap, Rule};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::space::{Cell, ExtPoint, OrderInterval};

/// A weight function attached to the map it is a cocycle candidate for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFn {
    map: PiecewiseMonotoneMap,
    weight: PiecewiseFunction,
}

impl CocycleFn {
    pub fn new(map: PiecewiseMonotoneMap, weight: PiecewiseFunction) -> Result<Self> {
        if map.space() != weight.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(CocycleFn { map, weight })
    }

    pub fn map(&self) -> &PiecewiseMonotoneMap {
        &self.map
    }

    pub fn weight(&self) -> &PiecewiseFunction {
        &self.weight
    }

    pub fn eval(&self, x: &ExtPoint) -> Result<Rational> {
        self.weight.eval(x)
    }
}

/// Outcome of checking the cocycle axioms. Each `Option` holds a witness
/// of failure and is `None` when the check passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub negative: Option<OrderInterval>,
    /// A target point whose weighted fibre sum is not one.
    pub bad_fiber_sum: Option<ExtPoint>,
    pub continuity: Continuity,
    pub strictly_positive: bool,
}

impl CocycleReport {
    pub fn nonneg(&self) -> bool {
        self.negative.is_none()
    }

    pub fn fiber_sums(&self) -> bool {
        self.bad_fiber_sum.is_none()
    }

    pub fn continuous(&self) -> bool {
        self.continuity.is_ok()
    }

    /// Nonnegative, fibre sums one, continuous.
    pub fn passes(&self) -> bool {
        self.nonneg() && self.fiber_sums() && self.continuous()
    }
}

fn require_csli(map: &PiecewiseMonotoneMap) -> Result<()> {
    let v = csli_verdict(map)?;
    if v.is_csli() {
        Ok(())
    } else {
        Err(Error::NotCsli(format!("{v:?}")))
    }
}

pub fn verify_cocycle(omega: &CocycleFn) -> Result<CocycleReport> {
    require_csli(&omega.map)?;
    let w = &omega.weight;
    let sums = transfer(&omega.map, w, &PiecewiseFunction::constant(w.space(), Rational::one()))?;
    let one = PiecewiseFunction::constant(w.space(), Rational::one());
    Ok(CocycleReport {
        negative: w.negative_cell(),
        bad_fiber_sum: sums.first_difference(&one)?,
        continuity: w.check_continuity(),
        strictly_positive: w.nonpositive_cell().is_none(),
    })
}

fn inverse_branch(map: &PiecewiseMonotoneMap, k: usize) -> (Rational, Rational) {
    let p = &map.pieces()[k];
    (Rational::one() / &p.slope, -&p.offset / &p.slope)
}

/// `y ↦ Σ_{φ(x)=y} g(x) f(x)`.
pub fn transfer(map: &PiecewiseMonotoneMap, g: &PiecewiseFunction, f: &PiecewiseFunction) -> Result<PiecewiseFunction> {
    if map.space() != g.space() {
        return Err(Error::SpaceMismatch);
    }
    let h = g.mul(f)?;
    let complex = CellComplex::build(map, &h.breakpoints(), &[])?;
    let mut cells = Vec::with_capacity(complex.target.len());
    for t in &complex.target {
        let mut acc = Poly::zero();
        for &s in &t.preimages {
            let src = &complex.source[s];
            let x = src.cell.representative();
            let owner = h.locate(&x)?;
            let term = match (&src.cell, src.piece) {
                (Cell::Point(_), _) => Poly::constant(owner.value_at(&x.coord)),
                (Cell::Open { .. }, Some(k)) => {
                    let (a, b) = inverse_branch(map, k);
                    owner.poly.compose_affine(&a, &b)
                }
                (Cell::Open { .. }, None) => unreachable!("open source cells have a piece"),
            };
            acc = &acc + &term;
        }
        cells.push(FnCell { cell: t.cell.clone(), poly: acc });
    }
    PiecewiseFunction::from_cells(map.space().clone(), cells)
}

/// The transfer operator of a cocycle applied to `f`.
pub fn transfer_apply(omega: &CocycleFn, f: &PiecewiseFunction) -> Result<PiecewiseFunction> {
    transfer(&omega.map, &omega.weight, f)
}

/// `f ∘ φ`.
pub fn pullback(f: &PiecewiseFunction, map: &PiecewiseMonotoneMap) -> Result<PiecewiseFunction> {
    if map.space() != f.space() {
        return Err(Error::SpaceMismatch);
    }
    let complex = CellComplex::build(map, &[], &f.breakpoints())?;
    let mut cells = Vec::with_capacity(complex.source.len());
    for s in &complex.source {
        let poly = match (&s.cell, s.piece) {
            (Cell::Point(x), _) => Poly::constant(f.eval(&map.apply(x)?)?),
            (Cell::Open { .. }, Some(k)) => {
                let y = complex.target[s.image].cell.representative();
                let p = &map.pieces()[k];
                f.locate(&y)?.poly.compose_affine(&p.slope, &p.offset)
            }
            (Cell::Open { .. }, None) => unreachable!("open source cells have a piece"),
        };
        cells.push(FnCell { cell: s.cell.clone(), poly });
    }
    PiecewiseFunction::from_cells(map.space().clone(), cells)
}

/// `E(f) = (𝓛f) ∘ φ`.
pub fn expectation(omega: &CocycleFn, f: &PiecewiseFunction) -> Result<PiecewiseFunction> {
    pullback(&transfer_apply(omega, f)?, &omega.map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// The weight vanishes on this interval with nonempty interior.
    Degenerate(OrderInterval),
    Nondegenerate,
}

pub fn degeneracy(omega: &CocycleFn) -> Degeneracy {
    match omega.weight.zero_open_cell() {
        Some(iv) => Degeneracy::Degenerate(iv),
        None => Degeneracy::Nondegenerate,
    }
}

/// `ω_d(x) = ω_e(x) · ω_f(φ_e(x))` everywhere, where `φ_d = φ_f ∘ φ_e`.
pub fn verify_identity(omega_d: &CocycleFn, omega_e: &CocycleFn, omega_f: &CocycleFn) -> Result<bool> {
    let composite = omega_f.map.compose(&omega_e.map)?;
    if let Some(x) = composite.first_difference(&omega_d.map)? {
        return Err(Error::CompositionMismatch(format!("maps differ at {x}")));
    }
    let rhs = omega_e.weight.mul(&pullback(&omega_f.weight, &omega_e.map)?)?;
    omega_d.weight.same_function(&rhs)
}

/// Builds a weight that is constant on every source cell of `complex`.
fn weight_from_source_values(
    map: &PiecewiseMonotoneMap,
    complex: &CellComplex,
    values: &[Rational],
) -> Result<PiecewiseFunction> {
    let cells = complex
        .source
        .iter()
        .zip(values)
        .map(|(s, v)| FnCell { cell: s.cell.clone(), poly: Poly::constant(v.clone()) })
        .collect();
    PiecewiseFunction::from_cells(map.space().clone(), cells)
}

/// `ω(x) = 1/|φ⁻¹(φ(x))|`, defined for local homeomorphisms.
pub fn construct_inverse_count(map: &PiecewiseMonotoneMap) -> Result<CocycleFn> {
    match is_local_homeomorphism(map)? {
        LocalHomeo::Yes => {}
        LocalHomeo::No { level, .. } => return Err(Error::NotLocalHomeomorphism { level }),
        LocalHomeo::Undecidable => {
            return Err(Error::NotCsli("local homeomorphism test is undecidable".into()));
        }
    }
    let complex = CellComplex::build(map, &[], &[])?;
    let values: Vec<Rational> =
        complex.source.iter().map(|s| Rational::new(1.into(), complex.target[s.image].multiplicity().into())).collect();
    CocycleFn::new(map.clone(), weight_from_source_values(map, &complex, &values)?)
}

fn cell_piece(map: &PiecewiseMonotoneMap, complex: &CellComplex, s: usize) -> usize {
    let src = &complex.source[s];
    match (src.piece, &src.cell) {
        (Some(k), _) => k,
        (None, Cell::Point(x)) => match map.rule(x) {
            Ok(Rule::Piece(k)) => k,
            _ => usize::MAX,
        },
        _ => usize::MAX,
    }
}

fn sheet_key(map: &PiecewiseMonotoneMap, complex: &CellComplex, sheet: &Sheet) -> (usize, ExtPoint) {
    let piece = sheet.cells.iter().map(|&s| cell_piece(map, complex, s)).min().unwrap_or(usize::MAX);
    let first = sheet.cells.iter().min().expect("nonempty sheet");
    (piece, complex.source[*first].cell.representative())
}

fn all_locally_open(map: &PiecewiseMonotoneMap, complex: &CellComplex, cells: &[usize]) -> Result<bool> {
    for &s in cells {
        if !locally_open_at(map, &complex.source[s].cell.representative())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weight one on a locally open branch over every stratum, zero on the
/// other branches. Over each stratum the first sheet (by lowest piece id,
/// then position) that covers it and is locally open throughout is used.
pub fn construct_branch_selection(map: &PiecewiseMonotoneMap) -> Result<(CocycleFn, CocycleReport)> {
    if let NecessaryCondition::Violated(y) = necessary_condition(map)? {
        return Err(Error::NecessaryConditionViolated(y));
    }
    let complex = CellComplex::build(map, &[], &[])?;
    let mut values = vec![Rational::zero(); complex.source.len()];
    for stratum in complex.strata(map) {
        let mut sheets = complex.sheets(stratum.cells.clone());
        sheets.sort_by_key(|sh| sheet_key(map, &complex, sh));
        let mut chosen = None;
        for sh in &sheets {
            if sh.covers && all_locally_open(map, &complex, &sh.cells)? {
                chosen = Some(sh);
                break;
            }
        }
        match chosen {
            Some(sh) => {
                for &s in &sh.cells {
                    values[s] = Rational::one();
                }
            }
            None => {
                for t in stratum.cells.clone() {
                    let mut pre = complex.target[t].preimages.clone();
                    pre.sort_by_key(|&s| (cell_piece(map, &complex, s), complex.source[s].cell.representative()));
                    let mut picked = None;
                    for s in pre {
                        if locally_open_at(map, &complex.source[s].cell.representative())? {
                            picked = Some(s);
                            break;
                        }
                    }
                    let s = picked.ok_or_else(|| Error::NoOpenBranch(format!("{}", complex.target[t].cell)))?;
                    values[s] = Rational::one();
                }
            }
        }
    }
    let omega = CocycleFn::new(map.clone(), weight_from_source_values(map, &complex, &values)?)?;
    let report = verify_cocycle(&omega)?;
    Ok((omega, report))
}

/// Value required at one end of a sheet.
#[derive(Clone, Debug, Default)]
struct EndConstraint {
    required: Option<Rational>,
    current: Rational,
}

impl EndConstraint {
    fn require(&mut self, v: Rational, at: &ExtPoint) -> Result<()> {
        match &self.required {
            Some(r) if *r != v => Err(Error::RepairFailed(format!("conflicting requirements {r} and {v} at {at}"))),
            _ => {
                self.required = Some(v);
                Ok(())
            }
        }
    }
}

/// Redistributes weights at one end of a stratum so that they sum to one.
fn resolve_end(ends: &mut [EndConstraint], at: &ExtPoint) -> Result<Vec<Rational>> {
    let fixed: Rational = ends.iter().filter_map(|e| e.required.clone()).fold(Rational::zero(), |a, b| a + b);
    let free: Vec<usize> = (0..ends.len()).filter(|&i| ends[i].required.is_none()).collect();
    let rest = Rational::one() - &fixed;
    if free.is_empty() {
        if !rest.is_zero() {
            return Err(Error::RepairFailed(format!("required weights over {at} sum to {fixed}, not 1")));
        }
    } else {
        if rest.is_negative() {
            return Err(Error::RepairFailed(format!("required weights over {at} exceed 1")));
        }
        let current: Rational = free.iter().map(|&i| ends[i].current.clone()).fold(Rational::zero(), |a, b| a + b);
        if current != rest {
            let others: Rational =
                free.iter().skip(1).map(|&i| ends[i].current.clone()).fold(Rational::zero(), |a, b| a + b);
            let first = &rest - &others;
            if first.is_negative() {
                for &i in free.iter().skip(1) {
                    ends[i].current = Rational::zero();
                }
                ends[free[0]].current = rest;
            } else {
                ends[free[0]].current = first;
            }
        }
        for &i in &free {
            ends[i].required = Some(ends[i].current.clone());
        }
    }
    Ok(ends.iter().map(|e| e.required.clone().expect("resolved")).collect())
}

/// Repairs a candidate whose fibre sums are right but which is not
/// continuous, or which must take prescribed values at `pins`.
///
/// On every stratum of multiplicity `j ≥ 2` the `j` sheets receive weights
/// that are affine in the target coordinate. Their values at the two ends of
/// the stratum come from the pins, from continuity with the neighbouring
/// cells outside the sheet, or else from the candidate; the remaining free
/// weight is distributed so the sum is one. Pins must sit at ends of sheets.
pub fn repair_continuity(candidate: &CocycleFn, pins: &[(ExtPoint, Rational)]) -> Result<(CocycleFn, CocycleReport)> {
    let report = verify_cocycle(candidate)?;
    let pinned_ok = pins.iter().all(|(x, v)| candidate.eval(x).is_ok_and(|w| &w == v));
    if report.passes() && pinned_ok {
        return Ok((candidate.clone(), report));
    }
    let map = &candidate.map;
    let w = &candidate.weight;
    let pin_map: BTreeMap<ExtPoint, Rational> = pins.iter().cloned().collect();
    let mut extra = w.breakpoints();
    extra.extend(pin_map.keys().cloned());
    let complex = CellComplex::build(map, &extra, &[])?;
    let strata = complex.strata(map);
    let mult_of = |t: usize| complex.target[t].multiplicity();
    let mut polys: Vec<Option<Poly>> = vec![None; complex.source.len()];

    // Weight of the source cell `s` near its point `x`, as already fixed or
    // as given by the candidate.
    let neighbour_value = |s: usize, x: &ExtPoint| -> Result<Rational> {
        if let Some(v) = pin_map.get(x) {
            return Ok(v.clone());
        }
        if mult_of(complex.source[s].image) == 1 {
            return Ok(Rational::one());
        }
        let rep = complex.source[s].cell.representative();
        Ok(w.locate(&rep)?.value_at(&x.coord))
    };

    for stratum in &strata {
        let j = stratum.multiplicity;
        let sheets = complex.sheets(stratum.cells.clone());
        if j == 1 {
            for sh in &sheets {
                for &s in &sh.cells {
                    polys[s] = Some(Poly::one());
                }
            }
            continue;
        }
        if sheets.len() != j || sheets.iter().any(|sh| !sh.covers) {
            return Err(Error::RepairFailed(format!("stratum {} does not split into {j} sheets", stratum.interval)));
        }
        let first_t = stratum.cells.start;
        let last_t = stratum.cells.end - 1;
        let y_lo = complex.target[first_t].cell.as_interval().lo().coord().clone();
        let y_hi = complex.target[last_t].cell.as_interval().hi().coord().clone();
        let at_lo = ExtPoint::new(stratum.interval.component, y_lo.clone());
        let at_hi = ExtPoint::new(stratum.interval.component, y_hi.clone());
        let single_end = !y_lo.is_finite() || !y_hi.is_finite() || y_lo.value() == y_hi.value();

        let mut lo_ends = vec![EndConstraint::default(); j];
        let mut hi_ends = vec![EndConstraint::default(); j];
        for (i, sh) in sheets.iter().enumerate() {
            for (end_cell, ends) in [(sh.cells[0], &mut lo_ends), (*sh.cells.last().expect("nonempty"), &mut hi_ends)] {
                let src = &complex.source[end_cell];
                let rep = src.cell.representative();
                let e = &mut ends[i];
                match &src.cell {
                    Cell::Point(x) => {
                        e.current = w.locate(x)?.value_at(&x.coord);
                        if let Some(v) = pin_map.get(x) {
                            e.require(v.clone(), x)?;
                        }
                        for nb in [end_cell.checked_sub(1), Some(end_cell + 1)].into_iter().flatten() {
                            let linked =
                                if nb < end_cell { complex.source_linked(nb) } else { complex.source_linked(end_cell) };
                            if linked && !sh.cells.contains(&nb) && !complex.source[nb].cell.is_point() {
                                e.require(neighbour_value(nb, x)?, x)?;
                            }
                        }
                    }
                    Cell::Open { lo, hi, .. } => {
                        // The end of the sheet is the limit at a point cell
                        // outside the stratum; match that point's weight.
                        let before = end_cell.checked_sub(1).filter(|&nb| complex.source_linked(nb));
                        let after = complex.source_linked(end_cell).then_some(end_cell + 1);
                        for nb in [before, after].into_iter().flatten() {
                            if sh.cells.contains(&nb) {
                                continue;
                            }
                            let Cell::Point(x) = &complex.source[nb].cell else { continue };
                            let v = neighbour_value(nb, x)?;
                            e.current = w.locate(&rep)?.value_at(if nb < end_cell { lo } else { hi });
                            e.require(v, x)?;
                        }
                        if e.required.is_none() {
                            let edge = if complex.target[src.image].cell.as_interval().lo().coord() == &y_lo {
                                lo
                            } else {
                                hi
                            };
                            e.current = w.locate(&rep)?.value_at(edge);
                        }
                    }
                }
            }
        }
        // The point order along a sheet may run against the target order for
        // decreasing pieces; ends are indexed by target order already since
        // sheets are sorted by image.
        let (lo_vals, hi_vals) = if single_end {
            for (a, b) in lo_ends.iter_mut().zip(hi_ends.iter()) {
                if let Some(v) = &b.required {
                    a.require(v.clone(), &at_hi)?;
                }
            }
            let v = resolve_end(&mut lo_ends, &at_lo)?;
            (v.clone(), v)
        } else {
            (resolve_end(&mut lo_ends, &at_lo)?, resolve_end(&mut hi_ends, &at_hi)?)
        };

        for (i, sh) in sheets.iter().enumerate() {
            // Affine weight in the target coordinate through both end values.
            let wy = if single_end {
                Poly::constant(lo_vals[i].clone())
            } else {
                let (a, b) = (y_lo.value().expect("finite"), y_hi.value().expect("finite"));
                let slope = (&hi_vals[i] - &lo_vals[i]) / (b - a);
                let offset = &lo_vals[i] - &slope * a;
                Poly::linear(slope, offset)
            };
            for &s in &sh.cells {
                let src = &complex.source[s];
                let poly = match (&src.cell, src.piece) {
                    (Cell::Point(x), _) => {
                        let y = map.apply(x)?;
                        Poly::constant(eval_at(&wy, &y.coord))
                    }
                    (Cell::Open { .. }, Some(k)) => {
                        let p = &map.pieces()[k];
                        wy.compose_affine(&p.slope, &p.offset)
                    }
                    (Cell::Open { .. }, None) => unreachable!("open source cells have a piece"),
                };
                polys[s] = Some(poly);
            }
        }
    }

    let cells = complex
        .source
        .iter()
        .zip(polys)
        .map(|(s, p)| FnCell { cell: s.cell.clone(), poly: p.expect("every source cell lies over a stratum") })
        .collect();
    let weight = PiecewiseFunction::from_cells(map.space().clone(), cells)?;
    let repaired = CocycleFn::new(map.clone(), weight)?;
    let report = verify_cocycle(&repaired)?;
    if !report.passes() {
        return Err(Error::RepairFailed(format!("repaired weight still fails verification: {report:?}")));
    }
    for (x, v) in pins {
        if &repaired.eval(x)? != v {
            return Err(Error::RepairFailed(format!("pin at {x} could not be honoured")));
        }
    }
    Ok((repaired, report))
}
