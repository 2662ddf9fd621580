//! Runs every configured check on a system description and collects the
//! verdicts, their witnesses and the mismatches against expectations.

use std::fmt::Write as _;

use csli_core::analysis::{
    csli_verdict, local_homeo_from_profile, necessary_condition, stratify, LocalHomeo, NecessaryCondition,
};
use csli_core::certificates::{check_certificate, CertificateVerdict, NonAdmissibilityCertificate};
use csli_core::cocycle::{
    construct_branch_selection, construct_inverse_count, degeneracy, repair_continuity, verify_cocycle,
    verify_identity, CocycleFn, CocycleReport, Degeneracy,
};
use csli_core::error::Error as CoreError;
use csli_core::function::PiecewiseFunction;
use csli_core::gallery::DyadicTranslations;
use csli_core::maps::{Continuity, PiecewiseMonotoneMap};
use csli_core::rational::Rational;
use csli_core::semigroup::{
    check_ddag, check_dichotomy, check_separation, find_collision, CompatibleAction, Ddag, Dichotomy, DivisibleFamily,
    ExplicitFamily, FreeSemigroupAction, FundamentalSequence, MapFamily, MultiIndex,
};
use csli_core::seqspace::seq_in_x;
use csli_core::space::{ExtPoint, OrderedCutSpace};
use serde::Serialize;
use serde_json::Value;

use crate::schema::{
    AdmissibleVerdict, ConstructMethod, DegeneracyVerdict, DichotomyVerdict, Dynamics, FunctionDto, IntervalDto,
    PointDto, RationalDto, ResolverDto, SchemaError, SeqPointDto, SpaceDesc, SystemDescription, Verdicts,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumWitness {
    pub interval: IntervalDto,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleWitness {
    /// Where the cocycle came from, e.g. `cocycles[0]`, `constructed`, `d=1/2`.
    pub source: String,
    pub passes: bool,
    pub strictly_positive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_on: Option<IntervalDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_fiber_sum_at: Option<PointDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discontinuous_at: Option<PointDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_on: Option<IntervalDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub d: RationalDto,
    pub e: RationalDto,
    pub f: RationalDto,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeqMembership {
    pub point: SeqPointDto,
    pub in_z: bool,
    pub in_x_to_depth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdagWitness {
    pub i: usize,
    pub j: usize,
    pub at: PointDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub index: Vec<u32>,
    pub point: PointDto,
    pub steps: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discontinuity: Option<PointDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<PointDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fold: Option<PointDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<StratumWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_clopen_level: Option<(usize, PointDto)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub necessary_condition_violated_at: Option<PointDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<CocycleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructed: Option<FunctionDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sequence_points: Vec<SeqMembership>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ddag_violation: Option<DdagWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_comparisons: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_mismatch: Option<PathWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub injective: Vec<RationalDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_injective: Vec<RationalDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub collision_images: Vec<(RationalDto, PointDto)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses,
    /// Stages that could not run, as `stage: message`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.matched() { "ok" } else { "MISMATCH" };
        let _ = writeln!(out, "{} [{status}]", self.name);
        if let Value::Object(fields) = serde_json::to_value(&self.verdicts).expect("verdicts serialize") {
            for (k, v) in fields {
                let _ = writeln!(out, "  {k}: {}", compact(&v));
            }
        }
        for e in &self.errors {
            let _ = writeln!(out, "  error: {e}");
        }
        for m in &self.mismatches {
            let _ = writeln!(out, "  expected {} = {}, got {}", m.field, compact(&m.expected), compact(&m.actual));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn point(p: &ExtPoint) -> PointDto {
    PointDto::from_core(p).expect("points of gallery size fit the schema")
}

fn interval(iv: &csli_core::space::OrderInterval) -> IntervalDto {
    IntervalDto::from_core(iv).expect("intervals of gallery size fit the schema")
}

fn rational(q: &Rational) -> RationalDto {
    RationalDto::from_core(q).expect("rationals of gallery size fit the schema")
}

/// Compares every field set in `expected` against `actual`.
pub fn compare(expected: &Verdicts, actual: &Verdicts) -> Vec<Mismatch> {
    let exp = serde_json::to_value(expected).expect("verdicts serialize");
    let act = serde_json::to_value(actual).expect("verdicts serialize");
    let Value::Object(exp) = exp else { return Vec::new() };
    exp.into_iter()
        .filter_map(|(field, e)| {
            let a = act.get(&field).cloned().unwrap_or(Value::Null);
            (a != e).then_some(Mismatch { field, expected: e, actual: a })
        })
        .collect()
}

struct Run {
    verdicts: Verdicts,
    witnesses: Witnesses,
    errors: Vec<String>,
}

impl Run {
    fn attempt<T>(&mut self, stage: &str, r: Result<T, CoreError>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("{stage}: {e}"));
                None
            }
        }
    }

    fn cocycle_witness(&mut self, source: String, omega: &CocycleFn, r: &CocycleReport) -> bool {
        let degenerate_on = match degeneracy(omega) {
            Degeneracy::Degenerate(iv) => Some(interval(&iv)),
            Degeneracy::Nondegenerate => None,
        };
        self.witnesses.cocycles.push(CocycleWitness {
            source,
            passes: r.passes(),
            strictly_positive: r.strictly_positive,
            negative_on: r.negative.as_ref().map(interval),
            bad_fiber_sum_at: r.bad_fiber_sum.as_ref().map(point),
            discontinuous_at: match &r.continuity {
                Continuity::Ok => None,
                Continuity::Violation(x) => Some(point(x)),
            },
            degenerate_on,
        });
        r.passes()
    }
}

/// Runs the configured checks. Schema problems are returned as errors;
/// failures of individual stages are recorded in the report.
pub fn run_pipeline(s: &SystemDescription) -> Result<Report, SchemaError> {
    let mut run = Run { verdicts: Verdicts::default(), witnesses: Witnesses::default(), errors: Vec::new() };
    match &s.dynamics {
        Dynamics::Map { .. } => run_map(s, &mut run)?,
        Dynamics::FreeAction { .. } => run_action(s, &mut run)?,
        Dynamics::Family { .. } => run_family(s, &mut run)?,
        Dynamics::ShiftDouble { depth } => run_sequence(s, *depth, &mut run)?,
    }
    let mismatches = compare(&s.expected, &run.verdicts);
    Ok(Report {
        name: s.name.clone(),
        verdicts: run.verdicts,
        witnesses: run.witnesses,
        errors: run.errors,
        mismatches,
    })
}

fn run_certificates(s: &SystemDescription, run: &mut Run) -> Result<Option<bool>, SchemaError> {
    let certs = s.certificates_core()?;
    if certs.is_empty() {
        return Ok(None);
    }
    let mut all = true;
    for (i, c) in certs.iter().enumerate() {
        match check_certificate(c) {
            Ok(CertificateVerdict::Valid) => run.witnesses.certificates.push("valid".into()),
            Ok(CertificateVerdict::Invalid(why)) => {
                all = false;
                run.witnesses.certificates.push(format!("invalid: {why}"));
            }
            Err(e) => {
                all = false;
                run.errors.push(format!("certificates[{i}]: {e}"));
                run.witnesses.certificates.push(format!("error: {e}"));
            }
        }
    }
    run.verdicts.certificates_valid = Some(all);
    Ok(Some(all))
}

fn admissible(cocycle: bool, certificate: bool) -> AdmissibleVerdict {
    match (cocycle, certificate) {
        (true, true) => AdmissibleVerdict::Contradiction,
        (true, false) => AdmissibleVerdict::YesWithCocycle,
        (false, true) => AdmissibleVerdict::No,
        (false, false) => AdmissibleVerdict::Unknown,
    }
}

fn run_map(s: &SystemDescription, run: &mut Run) -> Result<(), SchemaError> {
    let map = s.map()?;
    let cocycles = s.cocycle_functions()?;
    let pins = s.pins_core()?;

    let Some(csli) = run.attempt("csli", csli_verdict(&map)) else { return Ok(()) };
    run.witnesses.discontinuity = csli.discontinuity.as_ref().map(point);
    run.witnesses.uncovered = csli.uncovered.as_ref().map(point);
    run.witnesses.fold = csli.fold.as_ref().map(point);
    run.verdicts.csli = Some(csli.is_csli());
    let valid_certificate = run_certificates(s, run)?.unwrap_or(false);
    if !csli.is_csli() {
        run.verdicts.admissible = Some(admissible(false, valid_certificate));
        return Ok(());
    }

    let mut local_homeo = None;
    if let Some(profile) = run.attempt("stratify", stratify(&map)) {
        run.witnesses.strata = profile
            .strata
            .iter()
            .map(|st| StratumWitness { interval: interval(&st.interval), multiplicity: st.multiplicity })
            .collect();
        match run.attempt("local_homeo", local_homeo_from_profile(&profile, map.space())) {
            Some(LocalHomeo::Yes) => local_homeo = Some(true),
            Some(LocalHomeo::No { level, boundary }) => {
                run.witnesses.non_clopen_level = Some((level, point(&boundary)));
                local_homeo = Some(false);
            }
            Some(LocalHomeo::Undecidable) => run.errors.push("local_homeo: undecidable".into()),
            None => {}
        }
    }
    run.verdicts.local_homeo = local_homeo;
    match run.attempt("necessary_condition", necessary_condition(&map)) {
        Some(NecessaryCondition::Satisfied) => run.verdicts.necessary_condition = Some(true),
        Some(NecessaryCondition::Violated(y)) => {
            run.witnesses.necessary_condition_violated_at = Some(point(&y));
            run.verdicts.necessary_condition = Some(false);
        }
        None => {}
    }

    // The cocycle whose expectation is classified: the first supplied one,
    // otherwise the constructed one.
    let mut verified: Vec<CocycleFn> = Vec::new();
    let mut all_pass = true;
    let mut any_strict = false;
    for (i, w) in cocycles.into_iter().enumerate() {
        let stage = format!("cocycles[{i}]");
        let Some(omega) = run.attempt(&stage, CocycleFn::new(map.clone(), w)) else {
            all_pass = false;
            continue;
        };
        match run.attempt(&stage, verify_cocycle(&omega)) {
            Some(r) => {
                any_strict |= r.strictly_positive && r.passes();
                if run.cocycle_witness(stage, &omega, &r) {
                    verified.push(omega);
                } else {
                    all_pass = false;
                }
            }
            None => all_pass = false,
        }
    }
    if let Some(method) = s.construct {
        let built = match method {
            ConstructMethod::InverseCount => construct_inverse_count(&map).and_then(|w| {
                let r = verify_cocycle(&w)?;
                Ok((w, r))
            }),
            ConstructMethod::BranchSelection => construct_branch_selection(&map).and_then(|(w, r)| {
                if r.passes() && pins.is_empty() {
                    Ok((w, r))
                } else {
                    repair_continuity(&w, &pins)
                }
            }),
        };
        match run.attempt("construct", built) {
            Some((w, r)) => {
                run.witnesses.constructed = FunctionDto::from_core(w.weight()).ok();
                any_strict |= r.strictly_positive && r.passes();
                if run.cocycle_witness("constructed".into(), &w, &r) {
                    verified.push(w);
                } else {
                    all_pass = false;
                }
            }
            None => all_pass = false,
        }
    }
    if !s.cocycles.is_empty() || s.construct.is_some() {
        run.verdicts.cocycles_verified = Some(all_pass && !verified.is_empty());
    }
    if let Some(primary) = verified.first() {
        run.verdicts.degeneracy = Some(match degeneracy(primary) {
            Degeneracy::Degenerate(_) => DegeneracyVerdict::Degenerate,
            Degeneracy::Nondegenerate => DegeneracyVerdict::Nondegenerate,
        });
    }

    // A strictly positive cocycle exists iff the map is a local
    // homeomorphism; the inverse count is the witness when it is.
    if !any_strict && local_homeo == Some(true) {
        if let Some(w) = run.attempt("inverse_count", construct_inverse_count(&map)) {
            if let Some(r) = run.attempt("inverse_count", verify_cocycle(&w)) {
                any_strict = r.strictly_positive && r.passes();
            }
        }
    }
    if local_homeo.is_some() {
        run.verdicts.strictly_positive_possible = Some(any_strict);
    }
    run.verdicts.admissible = Some(admissible(!verified.is_empty(), valid_certificate));
    Ok(())
}

fn run_sequence(s: &SystemDescription, depth: u32, run: &mut Run) -> Result<(), SchemaError> {
    if s.space != SpaceDesc::Sequence {
        return Err(SchemaError::Field {
            path: "space".into(),
            message: "shift_double needs the sequence space".into(),
        });
    }
    let certs = s.certificates_core()?;
    for c in &certs {
        if let NonAdmissibilityCertificate::Sequence { a, b, .. } = c {
            for p in [a, b] {
                let in_x = run.attempt("membership", seq_in_x(p, depth)).unwrap_or(false);
                run.witnesses.sequence_points.push(SeqMembership {
                    point: SeqPointDto::from_core(p)?,
                    in_z: p.in_z(),
                    in_x_to_depth: in_x,
                });
            }
        }
    }
    let valid = run_certificates(s, run)?.unwrap_or(false);
    run.verdicts.admissible = Some(admissible(false, valid));
    Ok(())
}

/// All orderings of the generator steps of `m`, without repeats.
pub fn interleavings(m: &MultiIndex) -> Vec<Vec<usize>> {
    fn go(left: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for g in 0..left.len() {
            if left[g] > 0 {
                left[g] -= 1;
                cur.push(g);
                go(left, cur, out);
                cur.pop();
                left[g] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut m.entries().to_vec(), &mut Vec::new(), &mut out);
    out
}

fn run_action(s: &SystemDescription, run: &mut Run) -> Result<(), SchemaError> {
    let Dynamics::FreeAction { generators, max_index, samples } = &s.dynamics else { unreachable!() };
    let space = s.cut_space()?;
    let mut cocycles = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let p = format!("dynamics.generators[{i}]");
        let map = g.map.to_core(&space, &format!("{p}.map"))?;
        let w = g.cocycle.to_core(&space, &format!("{p}.cocycle"))?;
        cocycles.push(CocycleFn::new(map, w)?);
    }
    let samples = samples
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("dynamics.samples[{i}]");
            let x = p.to_core(&path)?;
            if space.contains(&x) {
                Ok(x)
            } else {
                Err(SchemaError::Field { path, message: format!("{x} is not a point of the space") })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut all_pass = true;
    for (i, w) in cocycles.iter().enumerate() {
        match run.attempt(&format!("generators[{i}]"), verify_cocycle(w)) {
            Some(r) => all_pass &= run.cocycle_witness(format!("generators[{i}]"), w, &r),
            None => all_pass = false,
        }
    }
    run.verdicts.cocycles_verified = Some(all_pass);

    let Some(action) = run.attempt("action", FreeSemigroupAction::new(cocycles)) else { return Ok(()) };
    let Some(ddag) = run.attempt("ddag", check_ddag(&action)) else { return Ok(()) };
    run.verdicts.ddag = Some(ddag.holds());
    if let Ddag::Violated { i, j, at } = &ddag {
        run.witnesses.ddag_violation = Some(DdagWitness { i: *i, j: *j, at: point(at) });
        return Ok(());
    }
    let Some(compatible) = run.attempt("ddag", CompatibleAction::new(action)) else { return Ok(()) };

    let mut comparisons = 0;
    let mut independent = true;
    'outer: for m in MultiIndex::all_up_to(compatible.action().rank(), *max_index) {
        for x in &samples {
            let Some(canonical) = run.attempt("extend", compatible.extend_cocycle(&m, x)) else {
                independent = false;
                break 'outer;
            };
            for steps in interleavings(&m) {
                comparisons += 1;
                let Some(v) = run.attempt("extend", compatible.path_product(&steps, x)) else {
                    independent = false;
                    break 'outer;
                };
                if v != canonical {
                    run.witnesses.path_mismatch =
                        Some(PathWitness { index: m.entries().to_vec(), point: point(x), steps });
                    independent = false;
                    break 'outer;
                }
            }
        }
    }
    run.witnesses.path_comparisons = Some(comparisons);
    run.verdicts.extension_path_independent = Some(independent);
    Ok(())
}

/// The resolver of a family system.
pub enum Resolver {
    Dyadic(DyadicTranslations),
    Table(ExplicitFamily),
}

impl MapFamily for Resolver {
    fn resolve(&self, d: &Rational) -> Result<PiecewiseMonotoneMap, CoreError> {
        match self {
            Resolver::Dyadic(f) => f.resolve(d),
            Resolver::Table(f) => f.resolve(d),
        }
    }
}

/// The family, its space and the configured depth of a `family` system.
pub fn family_of(s: &SystemDescription) -> Result<(DivisibleFamily<Resolver>, OrderedCutSpace, usize), SchemaError> {
    let Dynamics::Family { resolver, sequence, depth, .. } = &s.dynamics else {
        return Err(SchemaError::Field { path: "dynamics".into(), message: "this operation needs a family".into() });
    };
    let space = s.cut_space()?;
    let resolver = match resolver {
        ResolverDto::DyadicTranslations => {
            let fam = DyadicTranslations::new();
            if fam.space() != &space {
                return Err(SchemaError::Field {
                    path: "space".into(),
                    message: "dyadic translations act on three dyadic-cut half lines".into(),
                });
            }
            Resolver::Dyadic(fam)
        }
        ResolverDto::Table { entries } => {
            let mut maps = Vec::new();
            for (i, e) in entries.iter().enumerate() {
                let p = format!("dynamics.resolver.entries[{i}]");
                maps.push((e.element.to_core(&format!("{p}.element"))?, e.map.to_core(&space, &format!("{p}.map"))?));
            }
            Resolver::Table(ExplicitFamily::new(maps))
        }
    };
    let elements = sequence
        .iter()
        .enumerate()
        .map(|(i, q)| q.to_core(&format!("dynamics.sequence[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let sequence = FundamentalSequence::new(elements)
        .map_err(|e| SchemaError::Field { path: "dynamics.sequence".into(), message: e.to_string() })?;
    Ok((DivisibleFamily::new(sequence, resolver), space, *depth))
}

fn run_family(s: &SystemDescription, run: &mut Run) -> Result<(), SchemaError> {
    let Dynamics::Family { cocycles, .. } = &s.dynamics else { unreachable!() };
    let (family, space, depth) = family_of(s)?;

    let mut weights: Vec<(Rational, CocycleFn)> = Vec::new();
    let mut all_pass = true;
    let mut csli = true;
    let mut homeo = true;
    for (i, c) in cocycles.iter().enumerate() {
        let p = format!("dynamics.cocycles[{i}]");
        let d = c.element.to_core(&format!("{p}.element"))?;
        let f: PiecewiseFunction = c.function.to_core(&space, &format!("{p}.function"))?;
        let stage = format!("d={d}");
        let Some(map) = run.attempt(&stage, family.resolver.resolve(&d)) else {
            all_pass = false;
            continue;
        };
        match run.attempt(&stage, csli_verdict(&map)) {
            Some(v) if v.is_csli() => {}
            _ => {
                csli = false;
                all_pass = false;
                continue;
            }
        }
        let lh = run.attempt(&stage, stratify(&map).and_then(|p| local_homeo_from_profile(&p, map.space())));
        homeo &= matches!(lh, Some(LocalHomeo::Yes));
        let Some(omega) = run.attempt(&stage, CocycleFn::new(map, f)) else {
            all_pass = false;
            continue;
        };
        match run.attempt(&stage, verify_cocycle(&omega)) {
            Some(r) => all_pass &= run.cocycle_witness(stage, &omega, &r),
            None => all_pass = false,
        }
        weights.push((d, omega));
    }
    if !cocycles.is_empty() {
        run.verdicts.csli = Some(csli);
        run.verdicts.local_homeo = Some(homeo);
        run.verdicts.cocycles_verified = Some(all_pass);
        run.verdicts.admissible =
            Some(if all_pass { AdmissibleVerdict::YesWithCocycle } else { AdmissibleVerdict::Unknown });
    }

    let mut identities = true;
    for (e, we) in &weights {
        for (f, wf) in &weights {
            let sum = e + f;
            if e > f {
                continue;
            }
            let Some((_, wd)) = weights.iter().find(|(d, _)| *d == sum) else { continue };
            let holds = run.attempt(&format!("identity {sum}={e}+{f}"), verify_identity(wd, we, wf)).unwrap_or(false);
            identities &= holds;
            run.witnesses.identities.push(IdentityWitness { d: rational(&sum), e: rational(e), f: rational(f), holds });
        }
    }
    if !run.witnesses.identities.is_empty() {
        run.verdicts.identities_hold = Some(identities);
    }

    if let Some(d) = run.attempt("dichotomy", check_dichotomy(&family, depth)) {
        run.verdicts.dichotomy = Some(match d {
            Dichotomy::AllHomeo => DichotomyVerdict::AllHomeo,
            Dichotomy::NoneHomeo => DichotomyVerdict::NoneHomeo,
            Dichotomy::Inconsistent { injective, not_injective } => {
                run.witnesses.injective = injective.iter().map(rational).collect();
                run.witnesses.not_injective = not_injective.iter().map(rational).collect();
                DichotomyVerdict::Inconsistent
            }
        });
    }

    let composites = run.attempt("collision", family.pairwise_sums(depth));
    if let Some(composites) = composites {
        if let Some(Some(cert)) = run.attempt("collision", find_collision(&family, depth, &composites)) {
            if let Some(sep) = run.attempt("collision", check_separation(&family, &cert)) {
                run.witnesses.collision_images = sep.images.iter().map(|(d, y)| (rational(d), point(y))).collect();
                run.verdicts.collision = Some([point(&cert.u0), point(&cert.v0)]);
            }
        }
    }
    Ok(())
}
