//! The example systems with their expected verdicts.

use csli_core::gallery::{
    admiss_csli_cocycle, admiss_csli_map, admiss_csli_space, admiss_nondeg_pins, not_admiss2_certificate,
    not_admiss2_map, not_admiss_seq_certificate, DyadicTranslations,
};
use csli_core::rational::{int, rat, Rational};
use csli_core::semigroup::FundamentalSequence;

use crate::schema::{
    AdmissibleVerdict, CertificateDto, ConstructMethod, DegeneracyVerdict, DichotomyVerdict, Dynamics,
    ElementCocycleDto, FunctionDto, MapDto, PinDto, PointDto, RationalDto, ResolverDto, SpaceDesc, SpaceDto,
    SystemDescription, Verdicts,
};

pub const NAMES: [&str; 5] = ["admissCSLI", "admissnondeg", "notadmiss2", "notadmiss-seq", "divisadmiss"];

/// The depth to which the dyadic family is tested.
pub const DIVISIBLE_DEPTH: usize = 5;

fn q(v: &Rational) -> RationalDto {
    RationalDto::from_core(v).expect("small rational")
}

fn cut_line(space: &csli_core::space::OrderedCutSpace) -> SpaceDesc {
    SpaceDesc::CutLine { components: SpaceDto::from_core(space).expect("gallery space").components }
}

pub fn admiss_csli() -> SystemDescription {
    SystemDescription {
        name: "admissCSLI".into(),
        summary: "x+1 below the doubled zero, identity above: CSLI and admissible, not a local homeomorphism".into(),
        space: cut_line(&admiss_csli_space()),
        dynamics: Dynamics::Map { map: MapDto::from_core(&admiss_csli_map()).expect("gallery map") },
        cocycles: vec![FunctionDto::from_core(&admiss_csli_cocycle()).expect("gallery cocycle")],
        construct: Some(ConstructMethod::BranchSelection),
        pins: Vec::new(),
        certificates: Vec::new(),
        expected: Verdicts {
            csli: Some(true),
            local_homeo: Some(false),
            necessary_condition: Some(true),
            admissible: Some(AdmissibleVerdict::YesWithCocycle),
            degeneracy: Some(DegeneracyVerdict::Degenerate),
            strictly_positive_possible: Some(false),
            cocycles_verified: Some(true),
            ..Verdicts::default()
        },
    }
}

pub fn admiss_nondeg() -> SystemDescription {
    let pins = admiss_nondeg_pins()
        .iter()
        .map(|(p, v)| PinDto { point: PointDto::from_core(p).expect("pin"), value: q(v) })
        .collect();
    SystemDescription {
        name: "admissnondeg".into(),
        summary: "the admissCSLI map with a cocycle vanishing at the doubled zero: nondegenerate expectation".into(),
        space: cut_line(&admiss_csli_space()),
        dynamics: Dynamics::Map { map: MapDto::from_core(&admiss_csli_map()).expect("gallery map") },
        cocycles: Vec::new(),
        construct: Some(ConstructMethod::BranchSelection),
        pins,
        certificates: Vec::new(),
        expected: Verdicts {
            csli: Some(true),
            local_homeo: Some(false),
            admissible: Some(AdmissibleVerdict::YesWithCocycle),
            degeneracy: Some(DegeneracyVerdict::Nondegenerate),
            strictly_positive_possible: Some(false),
            cocycles_verified: Some(true),
            ..Verdicts::default()
        },
    }
}

pub fn not_admiss2() -> SystemDescription {
    SystemDescription {
        name: "notadmiss2".into(),
        summary: "x+1 on both halves with both zeros sent to 1: CSLI, not admissible".into(),
        space: cut_line(&admiss_csli_space()),
        dynamics: Dynamics::Map { map: MapDto::from_core(&not_admiss2_map()).expect("gallery map") },
        cocycles: Vec::new(),
        construct: None,
        pins: Vec::new(),
        certificates: vec![CertificateDto::from_core(&not_admiss2_certificate()).expect("gallery certificate")],
        expected: Verdicts {
            csli: Some(true),
            local_homeo: Some(false),
            admissible: Some(AdmissibleVerdict::No),
            strictly_positive_possible: Some(false),
            certificates_valid: Some(true),
            ..Verdicts::default()
        },
    }
}

pub fn not_admiss_seq() -> SystemDescription {
    SystemDescription {
        name: "notadmiss-seq".into(),
        summary: "shift with doubling on eventually constant sequences: not admissible".into(),
        space: SpaceDesc::Sequence,
        dynamics: Dynamics::ShiftDouble { depth: 8 },
        cocycles: Vec::new(),
        construct: None,
        pins: Vec::new(),
        certificates: vec![CertificateDto::from_core(&not_admiss_seq_certificate()).expect("gallery certificate")],
        expected: Verdicts {
            admissible: Some(AdmissibleVerdict::No),
            certificates_valid: Some(true),
            ..Verdicts::default()
        },
    }
}

/// The dyadic elements whose cocycles are listed for `divisadmiss`.
pub fn divisadmiss_elements() -> Vec<Rational> {
    vec![int(1), rat(1, 2), rat(1, 4), rat(3, 4)]
}

pub fn divisadmiss() -> SystemDescription {
    let fam = DyadicTranslations::new();
    let sequence = FundamentalSequence::geometric(int(1), 2, DIVISIBLE_DEPTH + 3).expect("halving sequence");
    let cocycles = divisadmiss_elements()
        .iter()
        .map(|d| ElementCocycleDto {
            element: q(d),
            function: FunctionDto::from_core(&fam.cocycle(d).expect("dyadic")).expect("gallery cocycle"),
        })
        .collect();
    let (u0, v0) = DyadicTranslations::collision_pair();
    SystemDescription {
        name: "divisadmiss".into(),
        summary: "translations by positive dyadics on three half lines: admissible, none a homeomorphism".into(),
        space: cut_line(fam.space()),
        dynamics: Dynamics::Family {
            resolver: ResolverDto::DyadicTranslations,
            sequence: sequence.elements().iter().map(q).collect(),
            depth: DIVISIBLE_DEPTH,
            cocycles,
        },
        cocycles: Vec::new(),
        construct: None,
        pins: Vec::new(),
        certificates: Vec::new(),
        expected: Verdicts {
            csli: Some(true),
            local_homeo: Some(true),
            admissible: Some(AdmissibleVerdict::YesWithCocycle),
            cocycles_verified: Some(true),
            identities_hold: Some(true),
            dichotomy: Some(DichotomyVerdict::NoneHomeo),
            collision: Some([PointDto::from_core(&u0).expect("point"), PointDto::from_core(&v0).expect("point")]),
            ..Verdicts::default()
        },
    }
}

pub fn entry(name: &str) -> Option<SystemDescription> {
    Some(match name {
        "admissCSLI" => admiss_csli(),
        "admissnondeg" => admiss_nondeg(),
        "notadmiss2" => not_admiss2(),
        "notadmiss-seq" => not_admiss_seq(),
        "divisadmiss" => divisadmiss(),
        _ => return None,
    })
}

pub fn all() -> Vec<SystemDescription> {
    NAMES.iter().map(|n| entry(n).expect("listed entry")).collect()
}
