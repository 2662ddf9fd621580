//! Structural analysis of a piecewise map: CSLI checks, the stratification
//! of the space by fibre cardinality, local openness and the local
//! homeomorphism test.
//!
//! Everything rests on a [`CellComplex`]: a decomposition of the target into
//! point and open cells, and of the source into cells each mapped onto one
//! target cell. Over an open target cell the fibre is a fixed set of affine
//! branches; only point cells can have exceptional fibres.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::One;

use crate::error::{Error, Result};
use crate::maps::{Continuity, PiecewiseMonotoneMap, Rule};
use crate::rational::Rational;
use crate::space::{
    is_clopen, is_gap, union, Bound, Cell, Clopen, ComponentId, Coord, ExtPoint, OrderInterval, OrderedCutSpace, Side,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceCell {
    pub cell: Cell,
    /// The governing piece of an open cell.
    pub piece: Option<usize>,
    /// Index of the target cell this cell is mapped onto.
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetCell {
    pub cell: Cell,
    /// Indices of the source cells mapped onto this cell.
    pub preimages: Vec<usize>,
}

impl TargetCell {
    pub fn multiplicity(&self) -> usize {
        self.preimages.len()
    }
}

/// Compatible decompositions of source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub source: Vec<SourceCell>,
    pub target: Vec<TargetCell>,
}

/// All legal points of `space` with value `v` in component `id`.
fn points_at_value(space: &OrderedCutSpace, id: ComponentId, v: &Rational) -> Vec<ExtPoint> {
    let Ok(comp) = space.component(id) else { return Vec::new() };
    [Side::Minus, Side::Interior, Side::Plus]
        .into_iter()
        .map(|s| ExtPoint::new(id, Coord::Finite(v.clone(), s)))
        .filter(|p| comp.contains(&p.coord))
        .collect()
}

fn complete(space: &OrderedCutSpace, pts: impl IntoIterator<Item = ExtPoint>) -> BTreeSet<ExtPoint> {
    let mut out = BTreeSet::new();
    for p in pts {
        match p.value() {
            Some(v) => out.extend(points_at_value(space, p.component, v)),
            None => {
                if space.contains(&p) {
                    out.insert(p);
                }
            }
        }
    }
    out
}

impl CellComplex {
    /// Builds the complex of `map`. Extra source points are made breakpoints
    /// of the source decomposition (with their images breakpoints of the
    /// target), extra target points breakpoints of the target.
    pub fn build(map: &PiecewiseMonotoneMap, extra_source: &[ExtPoint], extra_target: &[ExtPoint]) -> Result<Self> {
        let space = map.space();
        for p in extra_source.iter().chain(extra_target) {
            space.check_point(p)?;
        }
        let mut seeds: Vec<ExtPoint> = map.junction_points();
        seeds.extend(extra_source.iter().cloned());

        // Target breakpoints: images of all seeds, both actual and through
        // every piece whose closed domain contains them.
        let mut tpts: Vec<ExtPoint> = extra_target.to_vec();
        for x in &seeds {
            tpts.push(map.apply(x)?);
            for p in map.pieces().iter().filter(|p| p.domain.contains(x)) {
                tpts.push(ExtPoint::new(p.target, p.raw_image(&x.coord)));
            }
        }
        let tset = complete(space, tpts);

        let mut spts: Vec<ExtPoint> = seeds;
        for y in &tset {
            spts.extend(map.preimage(y)?);
        }
        let sset = complete(space, spts);

        let mut target = Vec::new();
        let mut source = Vec::new();
        for comp in space.components() {
            let tc = tset.iter().filter(|p| p.component == comp.id).map(|p| p.coord.clone());
            target.extend(space.cells(comp.id, tc)?.into_iter().map(|cell| TargetCell { cell, preimages: Vec::new() }));
            let sc = sset.iter().filter(|p| p.component == comp.id).map(|p| p.coord.clone());
            source.extend(space.cells(comp.id, sc)?);
        }

        let mut sources = Vec::with_capacity(source.len());
        for (i, cell) in source.into_iter().enumerate() {
            let (piece, img) = match &cell {
                Cell::Point(x) => {
                    let y = map.apply(x)?;
                    let idx = target.iter().position(|t| t.cell == Cell::Point(y.clone()));
                    (None, idx)
                }
                Cell::Open { .. } => {
                    let x = cell.representative();
                    let Rule::Piece(k) = map.rule(&x)? else {
                        return Err(Error::InvalidMap(format!("override inside open cell at {x}")));
                    };
                    let p = &map.pieces()[k];
                    let w = Coord::interior(p.eval_value(x.value().expect("finite sample")));
                    let idx = target.iter().position(|t| {
                        matches!(&t.cell, Cell::Open { component, lo, hi, .. }
                            if *component == p.target && lo < &w && &w < hi)
                    });
                    (Some(k), idx)
                }
            };
            let image = img.ok_or_else(|| Error::InvalidMap(format!("image of cell {cell} is not a target cell")))?;
            target[image].preimages.push(i);
            sources.push(SourceCell { cell, piece, image });
        }
        Ok(CellComplex { source: sources, target })
    }

    /// Source cells `i` and `i + 1` touch (no doubled gap between them).
    pub fn source_linked(&self, i: usize) -> bool {
        let (Some(a), Some(b)) = (self.source.get(i), self.source.get(i + 1)) else { return false };
        if a.cell.component() != b.cell.component() {
            return false;
        }
        match (&a.cell, &b.cell) {
            (Cell::Point(p), Cell::Point(q)) => !is_gap(&p.coord, &q.coord),
            _ => true,
        }
    }

    /// Target cells `i` and `i + 1` touch.
    pub fn target_linked(&self, i: usize) -> bool {
        let (Some(a), Some(b)) = (self.target.get(i), self.target.get(i + 1)) else { return false };
        if a.cell.component() != b.cell.component() {
            return false;
        }
        match (&a.cell, &b.cell) {
            (Cell::Point(p), Cell::Point(q)) => !is_gap(&p.coord, &q.coord),
            _ => true,
        }
    }

    /// The index of the target cell containing `y`.
    pub fn target_cell_of(&self, y: &ExtPoint) -> Option<usize> {
        self.target.iter().position(|t| t.cell.as_interval().contains(y))
    }

    /// Maximal runs of touching target cells with equal multiplicity.
    pub fn strata(&self, map: &PiecewiseMonotoneMap) -> Vec<Stratum> {
        let mut out: Vec<Stratum> = Vec::new();
        let mut start = 0;
        for i in 0..self.target.len() {
            let next_same = i + 1 < self.target.len()
                && self.target_linked(i)
                && self.target[i + 1].multiplicity() == self.target[i].multiplicity();
            if !next_same {
                out.push(self.make_stratum(map, start..i + 1));
                start = i + 1;
            }
        }
        out
    }

    fn make_stratum(&self, map: &PiecewiseMonotoneMap, cells: Range<usize>) -> Stratum {
        let first = &self.target[cells.start].cell;
        let last = &self.target[cells.end - 1].cell;
        let lo = match first {
            Cell::Point(p) => Bound::Closed(p.coord.clone()),
            Cell::Open { lo, .. } => Bound::Open(lo.clone()),
        };
        let hi = match last {
            Cell::Point(p) => Bound::Closed(p.coord.clone()),
            Cell::Open { hi, .. } => Bound::Open(hi.clone()),
        };
        let mut branches = BTreeSet::new();
        for t in cells.clone() {
            for &s in &self.target[t].preimages {
                let piece = match (&self.source[s].piece, &self.source[s].cell) {
                    (Some(k), _) => Some(*k),
                    (None, Cell::Point(x)) => match map.rule(x) {
                        Ok(Rule::Piece(k)) => Some(k),
                        _ => None,
                    },
                    _ => None,
                };
                if let Some(k) = piece {
                    let p = &map.pieces()[k];
                    let inv_slope = Rational::one() / &p.slope;
                    let inv_offset = -&p.offset / &p.slope;
                    branches.insert(Branch { piece: k, inverse_slope: inv_slope, inverse_offset: inv_offset });
                }
            }
        }
        Stratum {
            interval: OrderInterval::new(first.component(), lo, hi),
            multiplicity: self.target[cells.start].multiplicity(),
            cells,
            branches: branches.into_iter().collect(),
        }
    }

    /// Groups the source cells over the target cells `cells` into maximal
    /// connected chains.
    pub fn sheets(&self, cells: Range<usize>) -> Vec<Sheet> {
        let members: Vec<usize> = (0..self.source.len()).filter(|&i| cells.contains(&self.source[i].image)).collect();
        let mut sheets: Vec<Vec<usize>> = Vec::new();
        for &i in &members {
            match sheets.last_mut() {
                Some(last) if *last.last().expect("nonempty") + 1 == i && self.source_linked(i - 1) => last.push(i),
                _ => sheets.push(alloc::vec![i]),
            }
        }
        sheets
            .into_iter()
            .map(|mut src| {
                src.sort_by_key(|&i| self.source[i].image);
                let images: Vec<usize> = src.iter().map(|&i| self.source[i].image).collect();
                let covers = images == cells.clone().collect::<Vec<_>>();
                Sheet { cells: src, covers }
            })
            .collect()
    }
}

/// A connected chain of source cells over a run of target cells, sorted by
/// the order of their images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheet {
    pub cells: Vec<usize>,
    /// True when the chain has exactly one cell over every target cell.
    pub covers: bool,
}

/// An inverse branch `y ↦ inverse_slope·y + inverse_offset` of a piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    pub piece: usize,
    pub inverse_slope: Rational,
    pub inverse_offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub interval: OrderInterval,
    pub multiplicity: usize,
    /// Target cell indices of the complex this stratum was built from.
    pub cells: Range<usize>,
    pub branches: Vec<Branch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub complex: CellComplex,
    pub strata: Vec<Stratum>,
    /// `X_j`: points with exactly `j` preimages, as disjoint intervals.
    pub level_sets: BTreeMap<usize, Vec<OrderInterval>>,
    /// `Z_j = φ(X_j)`.
    pub level_images: BTreeMap<usize, Vec<OrderInterval>>,
    pub max_multiplicity: usize,
}

/// Stratifies the space by fibre cardinality. The map must be continuous.
pub fn stratify(map: &PiecewiseMonotoneMap) -> Result<MultiplicityProfile> {
    if let Continuity::Violation(x) = map.check_continuity() {
        return Err(Error::Discontinuous(x));
    }
    let complex = CellComplex::build(map, &[], &[])?;
    let strata = complex.strata(map);
    let mut level_sets: BTreeMap<usize, Vec<OrderInterval>> = BTreeMap::new();
    for s in &strata {
        level_sets.entry(s.multiplicity).or_default().push(s.interval.clone());
    }
    for v in level_sets.values_mut() {
        *v = union(core::mem::take(v));
    }
    let max_multiplicity = strata.iter().map(|s| s.multiplicity).max().unwrap_or(0);

    // Images of level sets need a source decomposition that resolves them.
    let boundaries: Vec<ExtPoint> = complex
        .target
        .iter()
        .filter_map(|t| match &t.cell {
            Cell::Point(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    let fine = CellComplex::build(map, &boundaries, &[])?;
    let mut level_images: BTreeMap<usize, Vec<OrderInterval>> = BTreeMap::new();
    for (j, set) in &level_sets {
        let imgs = fine
            .source
            .iter()
            .filter(|s| {
                let rep = s.cell.representative();
                set.iter().any(|iv| iv.contains(&rep))
            })
            .map(|s| fine.target[s.image].cell.as_interval());
        level_images.insert(*j, union(imgs));
    }
    Ok(MultiplicityProfile { complex, strata, level_sets, level_images, max_multiplicity })
}

/// The CSLI conditions with a witness for each failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsliVerdict {
    pub discontinuity: Option<ExtPoint>,
    pub uncovered: Option<ExtPoint>,
    pub fold: Option<ExtPoint>,
}

impl CsliVerdict {
    pub fn continuous(&self) -> bool {
        self.discontinuity.is_none()
    }

    pub fn surjective(&self) -> bool {
        self.uncovered.is_none()
    }

    pub fn locally_injective(&self) -> bool {
        self.fold.is_none()
    }

    pub fn is_csli(&self) -> bool {
        self.continuous() && self.surjective() && self.locally_injective()
    }
}

pub fn csli_verdict(map: &PiecewiseMonotoneMap) -> Result<CsliVerdict> {
    let discontinuity = match map.check_continuity() {
        Continuity::Ok => None,
        Continuity::Violation(x) => Some(x),
    };
    Ok(CsliVerdict { discontinuity, uncovered: check_surjective(map)?, fold: check_locally_injective(map) })
}

/// `None` when every point has a preimage, else an uncovered point.
pub fn check_surjective(map: &PiecewiseMonotoneMap) -> Result<Option<ExtPoint>> {
    let complex = CellComplex::build(map, &[], &[])?;
    Ok(complex.target.iter().find(|t| t.multiplicity() == 0).map(|t| t.cell.representative()))
}

/// `None` when no two adjacent pieces fold, else the fold point.
pub fn check_locally_injective(map: &PiecewiseMonotoneMap) -> Option<ExtPoint> {
    map.junction_points().into_iter().find(|x| match (map.piece_left_of(x), map.piece_right_of(x)) {
        (Some(a), Some(b)) => map.pieces()[a].increasing() != map.pieces()[b].increasing(),
        _ => false,
    })
}

/// Whether `map` sends small neighbourhoods of `x` onto neighbourhoods of
/// its image, decided by which sides of the image the adjacent pieces cover.
pub fn locally_open_at(map: &PiecewiseMonotoneMap, x: &ExtPoint) -> Result<bool> {
    let q = map.apply(x)?;
    let comp_q = map.space().component(q.component)?;
    let (mut left, mut right) = (false, false);
    if let Some(k) = map.piece_left_of(x) {
        if map.pieces()[k].increasing() {
            left = true
        } else {
            right = true
        }
    }
    if let Some(k) = map.piece_right_of(x) {
        if map.pieces()[k].increasing() {
            right = true
        } else {
            left = true
        }
    }
    let need_left = comp_q.accumulates_from_left(&q.coord);
    let need_right = comp_q.accumulates_from_right(&q.coord);
    Ok((!need_left || left) && (!need_right || right))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalHomeo {
    Yes,
    /// Level set `level` is not clopen; `boundary` is a bad boundary point.
    No {
        level: usize,
        boundary: ExtPoint,
    },
    Undecidable,
}

impl LocalHomeo {
    pub fn is_yes(&self) -> bool {
        matches!(self, LocalHomeo::Yes)
    }
}

/// Local homeomorphism test: every level set must be clopen.
pub fn is_local_homeomorphism(map: &PiecewiseMonotoneMap) -> Result<LocalHomeo> {
    let verdict = csli_verdict(map)?;
    if !verdict.is_csli() {
        return Err(Error::NotCsli(format!("{verdict:?}")));
    }
    local_homeo_from_profile(&stratify(map)?, map.space())
}

pub fn local_homeo_from_profile(profile: &MultiplicityProfile, space: &OrderedCutSpace) -> Result<LocalHomeo> {
    for (j, set) in &profile.level_sets {
        match is_clopen(set, space)? {
            Clopen::Yes => {}
            Clopen::No { boundary } => return Ok(LocalHomeo::No { level: *j, boundary }),
            Clopen::Undecidable => return Ok(LocalHomeo::Undecidable),
        }
    }
    Ok(LocalHomeo::Yes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NecessaryCondition {
    Satisfied,
    /// No point of the fibre over this point is locally open.
    Violated(ExtPoint),
}

impl NecessaryCondition {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, NecessaryCondition::Satisfied)
    }
}

/// Every fibre must contain a point where the map is locally open.
pub fn necessary_condition(map: &PiecewiseMonotoneMap) -> Result<NecessaryCondition> {
    let verdict = csli_verdict(map)?;
    if !verdict.is_csli() {
        return Err(Error::NotCsli(format!("{verdict:?}")));
    }
    let complex = CellComplex::build(map, &[], &[])?;
    for t in &complex.target {
        let mut open = false;
        for &s in &t.preimages {
            if locally_open_at(map, &complex.source[s].cell.representative())? {
                open = true;
                break;
            }
        }
        if !open {
            return Ok(NecessaryCondition::Violated(t.cell.representative()));
        }
    }
    Ok(NecessaryCondition::Satisfied)
}
