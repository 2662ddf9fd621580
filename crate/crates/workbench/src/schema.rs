//! JSON representation of spaces, maps, functions, certificates and whole
//! system descriptions.
//!
//! Rationals are `{"num": n, "den": d}` with `d > 0`; points are
//! `{"component": c, "value": q, "side": s}` with `s` one of `minus`, `plus`,
//! `interior`, `neg_inf`, `pos_inf` (infinities carry no value).

use std::collections::BTreeMap;

use csli_core::certificates::{LinePath, NonAdmissibilityCertificate};
use csli_core::function::PiecewiseFunction;
use csli_core::maps::{Piece, PiecewiseMonotoneMap};
use csli_core::poly::Poly;
use csli_core::rational::Rational;
use csli_core::seqspace::{Affine, PathEnd, SeqPath, SeqPoint};
use csli_core::space::{Bound, Component, ComponentId, Coord, CutSpec, ExtPoint, OrderInterval, OrderedCutSpace, Side};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{0}")]
    Core(#[from] csli_core::error::Error),
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
}

impl From<serde_json::Error> for SchemaError {
    fn from(e: serde_json::Error) -> Self {
        SchemaError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, SchemaError>;

fn field_err(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError::Field { path: path.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalDto {
    pub num: i64,
    pub den: i64,
}

impl RationalDto {
    pub fn from_core(q: &Rational) -> Result<Self> {
        let conv = |b: &BigInt| b.to_i64().ok_or_else(|| field_err("rational", format!("{q} does not fit the schema")));
        Ok(RationalDto { num: conv(q.numer())?, den: conv(q.denom())? })
    }

    pub fn to_core(&self, path: &str) -> Result<Rational> {
        if self.den <= 0 {
            return Err(field_err(path, format!("denominator {} must be positive", self.den)));
        }
        Ok(Rational::new(BigInt::from(self.num), BigInt::from(self.den)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideDto {
    Minus,
    Plus,
    Interior,
    NegInf,
    PosInf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<RationalDto>,
    pub side: SideDto,
}

impl CoordDto {
    pub fn from_core(c: &Coord) -> Result<Self> {
        Ok(match c {
            Coord::NegInf => CoordDto { value: None, side: SideDto::NegInf },
            Coord::PosInf => CoordDto { value: None, side: SideDto::PosInf },
            Coord::Finite(v, s) => CoordDto {
                value: Some(RationalDto::from_core(v)?),
                side: match s {
                    Side::Minus => SideDto::Minus,
                    Side::Interior => SideDto::Interior,
                    Side::Plus => SideDto::Plus,
                },
            },
        })
    }

    pub fn to_core(&self, path: &str) -> Result<Coord> {
        let finite = |side| -> Result<Coord> {
            let v = self.value.as_ref().ok_or_else(|| field_err(path, "finite point needs a value"))?;
            Ok(Coord::Finite(v.to_core(&format!("{path}.value"))?, side))
        };
        match self.side {
            SideDto::NegInf | SideDto::PosInf if self.value.is_some() => {
                Err(field_err(path, "an infinite point carries no value"))
            }
            SideDto::NegInf => Ok(Coord::NegInf),
            SideDto::PosInf => Ok(Coord::PosInf),
            SideDto::Minus => finite(Side::Minus),
            SideDto::Interior => finite(Side::Interior),
            SideDto::Plus => finite(Side::Plus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDto {
    pub component: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<RationalDto>,
    pub side: SideDto,
}

impl PointDto {
    pub fn from_core(p: &ExtPoint) -> Result<Self> {
        let c = CoordDto::from_core(&p.coord)?;
        Ok(PointDto { component: p.component.0, value: c.value, side: c.side })
    }

    pub fn to_core(&self, path: &str) -> Result<ExtPoint> {
        let c = CoordDto { value: self.value.clone(), side: self.side };
        Ok(ExtPoint::new(ComponentId(self.component), c.to_core(path)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CutSpecDto {
    Finite { values: Vec<RationalDto> },
    IntegersAtMost { bound: RationalDto },
    AllDyadics,
    AllIntegers,
}

impl CutSpecDto {
    pub fn from_core(c: &CutSpec) -> Result<Self> {
        Ok(match c {
            CutSpec::FiniteSet(vs) => {
                CutSpecDto::Finite { values: vs.iter().map(RationalDto::from_core).collect::<Result<_>>()? }
            }
            CutSpec::IntegersAtMost(b) => CutSpecDto::IntegersAtMost { bound: RationalDto::from_core(b)? },
            CutSpec::AllDyadics => CutSpecDto::AllDyadics,
            CutSpec::AllIntegers => CutSpecDto::AllIntegers,
        })
    }

    pub fn to_core(&self, path: &str) -> Result<CutSpec> {
        Ok(match self {
            CutSpecDto::Finite { values } => CutSpec::finite(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.to_core(&format!("{path}.values[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            CutSpecDto::IntegersAtMost { bound } => {
                let b = bound.to_core(&format!("{path}.bound"))?;
                if !b.is_integer() {
                    return Err(field_err(path, "bound must be an integer"));
                }
                CutSpec::IntegersAtMost(b)
            }
            CutSpecDto::AllDyadics => CutSpec::AllDyadics,
            CutSpecDto::AllIntegers => CutSpec::AllIntegers,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub id: u32,
    pub left: CoordDto,
    pub right: CoordDto,
    pub cuts: CutSpecDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDto {
    pub components: Vec<ComponentDto>,
}

impl SpaceDto {
    pub fn from_core(s: &OrderedCutSpace) -> Result<Self> {
        let components = s
            .components()
            .iter()
            .map(|c| {
                Ok(ComponentDto {
                    id: c.id.0,
                    left: CoordDto::from_core(&c.left_end)?,
                    right: CoordDto::from_core(&c.right_end)?,
                    cuts: CutSpecDto::from_core(&c.cuts)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SpaceDto { components })
    }

    pub fn to_core(&self, path: &str) -> Result<OrderedCutSpace> {
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let p = format!("{path}.components[{i}]");
                Ok(Component::new(
                    ComponentId(c.id),
                    c.left.to_core(&format!("{p}.left"))?,
                    c.right.to_core(&format!("{p}.right"))?,
                    c.cuts.to_core(&format!("{p}.cuts"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedCutSpace::new(comps).map_err(|e| field_err(path, e.to_string()))
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDto {
    pub component: u32,
    pub lo: CoordDto,
    pub hi: CoordDto,
    #[serde(default, skip_serializing_if = "is_false")]
    pub lo_open: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub hi_open: bool,
}

impl IntervalDto {
    pub fn from_core(iv: &OrderInterval) -> Result<Self> {
        let split = |b: &Bound| (matches!(b, Bound::Open(_)), b.coord().clone());
        let (lo_open, lo) = split(iv.lo());
        let (hi_open, hi) = split(iv.hi());
        Ok(IntervalDto {
            component: iv.component.0,
            lo: CoordDto::from_core(&lo)?,
            hi: CoordDto::from_core(&hi)?,
            lo_open,
            hi_open,
        })
    }

    pub fn to_core(&self, path: &str) -> Result<OrderInterval> {
        let wrap = |open: bool, c: Coord| if open { Bound::Open(c) } else { Bound::Closed(c) };
        Ok(OrderInterval::new(
            ComponentId(self.component),
            wrap(self.lo_open, self.lo.to_core(&format!("{path}.lo"))?),
            wrap(self.hi_open, self.hi.to_core(&format!("{path}.hi"))?),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDto {
    pub domain: IntervalDto,
    pub target: u32,
    pub slope: RationalDto,
    pub offset: RationalDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideDto {
    pub from: PointDto,
    pub to: PointDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDto {
    pub pieces: Vec<PieceDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<OverrideDto>,
}

impl MapDto {
    pub fn from_core(m: &PiecewiseMonotoneMap) -> Result<Self> {
        let pieces = m
            .pieces()
            .iter()
            .map(|p| {
                Ok(PieceDto {
                    domain: IntervalDto::from_core(&p.domain)?,
                    target: p.target.0,
                    slope: RationalDto::from_core(&p.slope)?,
                    offset: RationalDto::from_core(&p.offset)?,
                })
            })
            .collect::<Result<_>>()?;
        let overrides = m
            .overrides()
            .iter()
            .map(|(a, b)| Ok(OverrideDto { from: PointDto::from_core(a)?, to: PointDto::from_core(b)? }))
            .collect::<Result<_>>()?;
        Ok(MapDto { pieces, overrides })
    }

    pub fn to_core(&self, space: &OrderedCutSpace, path: &str) -> Result<PiecewiseMonotoneMap> {
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let pp = format!("{path}.pieces[{i}]");
                Ok(Piece::new(
                    p.domain.to_core(&format!("{pp}.domain"))?,
                    ComponentId(p.target),
                    p.slope.to_core(&format!("{pp}.slope"))?,
                    p.offset.to_core(&format!("{pp}.offset"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut overrides = BTreeMap::new();
        for (i, o) in self.overrides.iter().enumerate() {
            let op = format!("{path}.overrides[{i}]");
            let from = o.from.to_core(&format!("{op}.from"))?;
            if overrides.insert(from, o.to.to_core(&format!("{op}.to"))?).is_some() {
                return Err(field_err(op, "duplicate override"));
            }
        }
        PiecewiseMonotoneMap::new(space.clone(), pieces, overrides).map_err(|e| field_err(path, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDto {
    pub interval: IntervalDto,
    /// Coefficients, constant term first.
    pub poly: Vec<RationalDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDto {
    pub spans: Vec<SpanDto>,
}

impl FunctionDto {
    pub fn from_core(f: &PiecewiseFunction) -> Result<Self> {
        let spans = f
            .spans()
            .iter()
            .map(|(iv, p)| {
                Ok(SpanDto {
                    interval: IntervalDto::from_core(iv)?,
                    poly: p.coeffs().iter().map(RationalDto::from_core).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FunctionDto { spans })
    }

    pub fn to_core(&self, space: &OrderedCutSpace, path: &str) -> Result<PiecewiseFunction> {
        let spans = self
            .spans
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let sp = format!("{path}.spans[{i}]");
                let coeffs = s
                    .poly
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.to_core(&format!("{sp}.poly[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok((s.interval.to_core(&format!("{sp}.interval"))?, Poly::new(coeffs)))
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseFunction::from_spans(space, spans).map_err(|e| field_err(path, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqPointDto {
    pub left_tail: RationalDto,
    pub core: Vec<RationalDto>,
    pub offset: i64,
    pub right_tail: RationalDto,
}

impl SeqPointDto {
    pub fn from_core(p: &SeqPoint) -> Result<Self> {
        Ok(SeqPointDto {
            left_tail: RationalDto::from_core(p.left_tail())?,
            core: p.core().iter().map(RationalDto::from_core).collect::<Result<_>>()?,
            offset: p.offset(),
            right_tail: RationalDto::from_core(p.right_tail())?,
        })
    }

    pub fn to_core(&self, path: &str) -> Result<SeqPoint> {
        let core = self
            .core
            .iter()
            .enumerate()
            .map(|(i, v)| v.to_core(&format!("{path}.core[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        SeqPoint::new(
            self.left_tail.to_core(&format!("{path}.left_tail"))?,
            core,
            self.offset,
            self.right_tail.to_core(&format!("{path}.right_tail"))?,
        )
        .map_err(|e| field_err(path, e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDto {
    pub slope: RationalDto,
    pub offset: RationalDto,
}

impl AffineDto {
    fn from_core(a: &Affine) -> Result<Self> {
        Ok(AffineDto { slope: RationalDto::from_core(&a.slope)?, offset: RationalDto::from_core(&a.offset)? })
    }

    fn to_core(&self, path: &str) -> Result<Affine> {
        Ok(Affine::new(self.slope.to_core(&format!("{path}.slope"))?, self.offset.to_core(&format!("{path}.offset"))?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathEndDto {
    Lo,
    Hi,
}

impl From<PathEnd> for PathEndDto {
    fn from(e: PathEnd) -> Self {
        match e {
            PathEnd::Lo => PathEndDto::Lo,
            PathEnd::Hi => PathEndDto::Hi,
        }
    }
}

impl From<PathEndDto> for PathEnd {
    fn from(e: PathEndDto) -> Self {
        match e {
            PathEndDto::Lo => PathEnd::Lo,
            PathEndDto::Hi => PathEnd::Hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinePathDto {
    pub component: u32,
    pub value: AffineDto,
    pub lo: RationalDto,
    pub hi: RationalDto,
    pub limit_at: PathEndDto,
    pub limit: PointDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqPathDto {
    pub left_tail: AffineDto,
    pub core: Vec<AffineDto>,
    pub offset: i64,
    pub right_tail: AffineDto,
    pub lo: RationalDto,
    pub hi: RationalDto,
    pub limit_at: PathEndDto,
    pub limit: SeqPointDto,
}

impl LinePathDto {
    fn from_core(p: &LinePath) -> Result<Self> {
        Ok(LinePathDto {
            component: p.component.0,
            value: AffineDto::from_core(&p.value)?,
            lo: RationalDto::from_core(&p.lo)?,
            hi: RationalDto::from_core(&p.hi)?,
            limit_at: p.limit_at.into(),
            limit: PointDto::from_core(&p.limit)?,
        })
    }

    fn to_core(&self, path: &str) -> Result<LinePath> {
        Ok(LinePath {
            component: ComponentId(self.component),
            value: self.value.to_core(&format!("{path}.value"))?,
            lo: self.lo.to_core(&format!("{path}.lo"))?,
            hi: self.hi.to_core(&format!("{path}.hi"))?,
            limit_at: self.limit_at.into(),
            limit: self.limit.to_core(&format!("{path}.limit"))?,
        })
    }
}

impl SeqPathDto {
    fn from_core(p: &SeqPath) -> Result<Self> {
        Ok(SeqPathDto {
            left_tail: AffineDto::from_core(&p.left_tail)?,
            core: p.core.iter().map(AffineDto::from_core).collect::<Result<_>>()?,
            offset: p.offset,
            right_tail: AffineDto::from_core(&p.right_tail)?,
            lo: RationalDto::from_core(&p.lo)?,
            hi: RationalDto::from_core(&p.hi)?,
            limit_at: p.limit_at.into(),
            limit: SeqPointDto::from_core(&p.limit)?,
        })
    }

    fn to_core(&self, path: &str) -> Result<SeqPath> {
        Ok(SeqPath {
            left_tail: self.left_tail.to_core(&format!("{path}.left_tail"))?,
            core: self
                .core
                .iter()
                .enumerate()
                .map(|(i, a)| a.to_core(&format!("{path}.core[{i}]")))
                .collect::<Result<_>>()?,
            offset: self.offset,
            right_tail: self.right_tail.to_core(&format!("{path}.right_tail"))?,
            lo: self.lo.to_core(&format!("{path}.lo"))?,
            hi: self.hi.to_core(&format!("{path}.hi"))?,
            limit_at: self.limit_at.into(),
            limit: self.limit.to_core(&format!("{path}.limit"))?,
        })
    }
}

/// A self-contained certificate: line certificates carry their own space
/// and map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificateDto {
    Line { space: SpaceDto, map: MapDto, a: PointDto, b: PointDto, path_a: LinePathDto, path_b: LinePathDto },
    Sequence { a: SeqPointDto, b: SeqPointDto, path_a: SeqPathDto, path_b: SeqPathDto },
}

impl CertificateDto {
    pub fn from_core(c: &NonAdmissibilityCertificate) -> Result<Self> {
        Ok(match c {
            NonAdmissibilityCertificate::Line { map, a, b, path_a, path_b } => CertificateDto::Line {
                space: SpaceDto::from_core(map.space())?,
                map: MapDto::from_core(map)?,
                a: PointDto::from_core(a)?,
                b: PointDto::from_core(b)?,
                path_a: LinePathDto::from_core(path_a)?,
                path_b: LinePathDto::from_core(path_b)?,
            },
            NonAdmissibilityCertificate::Sequence { a, b, path_a, path_b } => CertificateDto::Sequence {
                a: SeqPointDto::from_core(a)?,
                b: SeqPointDto::from_core(b)?,
                path_a: SeqPathDto::from_core(path_a)?,
                path_b: SeqPathDto::from_core(path_b)?,
            },
        })
    }

    pub fn to_core(&self, path: &str) -> Result<NonAdmissibilityCertificate> {
        Ok(match self {
            CertificateDto::Line { space, map, a, b, path_a, path_b } => {
                let space = space.to_core(&format!("{path}.space"))?;
                NonAdmissibilityCertificate::Line {
                    map: map.to_core(&space, &format!("{path}.map"))?,
                    a: a.to_core(&format!("{path}.a"))?,
                    b: b.to_core(&format!("{path}.b"))?,
                    path_a: path_a.to_core(&format!("{path}.path_a"))?,
                    path_b: path_b.to_core(&format!("{path}.path_b"))?,
                }
            }
            CertificateDto::Sequence { a, b, path_a, path_b } => NonAdmissibilityCertificate::Sequence {
                a: a.to_core(&format!("{path}.a"))?,
                b: b.to_core(&format!("{path}.b"))?,
                path_a: path_a.to_core(&format!("{path}.path_a"))?,
                path_b: path_b.to_core(&format!("{path}.path_b"))?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDesc {
    CutLine {
        components: Vec<ComponentDto>,
    },
    /// Eventually constant sequences under the shift-and-double map.
    Sequence,
}

impl SpaceDesc {
    pub fn cut_line(&self) -> Option<SpaceDto> {
        match self {
            SpaceDesc::CutLine { components } => Some(SpaceDto { components: components.clone() }),
            SpaceDesc::Sequence => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDto {
    pub map: MapDto,
    pub cocycle: FunctionDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementCocycleDto {
    pub element: RationalDto,
    pub function: FunctionDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntryDto {
    pub element: RationalDto,
    pub map: MapDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ResolverDto {
    /// The translations by positive dyadics on three components.
    DyadicTranslations,
    Table {
        entries: Vec<TableEntryDto>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Dynamics {
    Map {
        map: MapDto,
    },
    FreeAction {
        generators: Vec<GeneratorDto>,
        /// Largest `|m|` for extension checks.
        max_index: u32,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        samples: Vec<PointDto>,
    },
    Family {
        resolver: ResolverDto,
        sequence: Vec<RationalDto>,
        depth: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        cocycles: Vec<ElementCocycleDto>,
    },
    ShiftDouble {
        /// Depth of the backward search used for membership reports.
        depth: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinDto {
    pub point: PointDto,
    pub value: RationalDto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructMethod {
    InverseCount,
    BranchSelection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleVerdict {
    YesWithCocycle,
    No,
    Unknown,
    /// Both a verified cocycle and a valid certificate: inconsistent input.
    Contradiction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneracyVerdict {
    Degenerate,
    Nondegenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyVerdict {
    AllHomeo,
    NoneHomeo,
    Inconsistent,
}

/// Verdicts, either expected (unset fields are not checked) or computed
/// (unset fields were not applicable).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csli: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_homeo: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub necessary_condition: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible: Option<AdmissibleVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracyVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strictly_positive_possible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycles_verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates_valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ddag: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_path_independent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities_hold: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dichotomy: Option<DichotomyVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<[PointDto; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDescription {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub summary: String,
    pub space: SpaceDesc,
    pub dynamics: Dynamics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<FunctionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructMethod>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pins: Vec<PinDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateDto>,
    #[serde(default)]
    pub expected: Verdicts,
}

impl SystemDescription {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptions always serialize")
    }

    /// The cut-line space, or an error naming `space` for sequence systems.
    pub fn cut_space(&self) -> Result<OrderedCutSpace> {
        self.space
            .cut_line()
            .ok_or_else(|| field_err("space", "this operation needs a cut-line space"))?
            .to_core("space")
    }

    /// The single map of a `map` system.
    pub fn map(&self) -> Result<PiecewiseMonotoneMap> {
        let space = self.cut_space()?;
        match &self.dynamics {
            Dynamics::Map { map } => map.to_core(&space, "dynamics.map"),
            _ => Err(field_err("dynamics", "this operation needs a single map")),
        }
    }

    pub fn cocycle_functions(&self) -> Result<Vec<PiecewiseFunction>> {
        let space = self.cut_space()?;
        self.cocycles.iter().enumerate().map(|(i, f)| f.to_core(&space, &format!("cocycles[{i}]"))).collect()
    }

    pub fn pins_core(&self) -> Result<Vec<(ExtPoint, Rational)>> {
        self.pins
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Ok((p.point.to_core(&format!("pins[{i}].point"))?, p.value.to_core(&format!("pins[{i}].value"))?))
            })
            .collect()
    }

    pub fn certificates_core(&self) -> Result<Vec<NonAdmissibilityCertificate>> {
        self.certificates.iter().enumerate().map(|(i, c)| c.to_core(&format!("certificates[{i}]"))).collect()
    }
}

/// Parses a piecewise function file against a space.
pub fn parse_function(text: &str, space: &OrderedCutSpace) -> Result<PiecewiseFunction> {
    let dto: FunctionDto = serde_json::from_str(text)?;
    dto.to_core(space, "function")
}

pub fn parse_certificate(text: &str) -> Result<NonAdmissibilityCertificate> {
    let dto: CertificateDto = serde_json::from_str(text)?;
    dto.to_core("certificate")
}
