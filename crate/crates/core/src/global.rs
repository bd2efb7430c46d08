//! Global assembly: conductor `N`, paramodular level `M`, Atkin-Lehner
//! signs, the completed-L gamma factor note, and the CM flag.
//!
//! `N = prod p^{a(pi_p)}` and `M = prod p^{k_p}` over the primes dividing
//! the minimal discriminant. Whenever reduction at 2 is good or
//! multiplicative, `M` is cross-checked against the closed form
//! `N * prod p^2` over the bad primes where `k_p = a(pi_p) + 2`, i.e. those
//! with `j` non-integral or `v_p(disc)` not divisible by 4; a mismatch is a
//! hard internal error, never a silent result.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::factor::{factor, FactorError};
use crate::local::{
    classify_at, legendre_delta_prime_3, ClassifyOutcome, LocalError, LocalGl2Data, NeronType,
    PrimeLocal, Q3Condition, ReductionType, RootNumber3,
};
use crate::padic::Valuation;
use crate::sym3::{sym3_conductor_general, sym3_local, SignExpr, Sym3Error, Sym3LocalData, Sym3Meta};
use crate::weierstrass::Invariants;

/// Fixed archimedean factor of the completed spin L-function
/// (`Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)`).
pub const GAMMA_FACTOR_NOTE: &str = "Gamma_C(s + 3/2) * Gamma_C(s + 1/2)";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlobalError {
    #[error("additive potentially good reduction at 2 is outside the classification tables")]
    UnsupportedAtTwo { partial: Vec<PrimeData> },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Sym3(#[from] Sym3Error),
    #[error("internal cross-check failed: {0}")]
    InternalCheck(String),
}

/// Everything the pipeline knows about one bad prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeData {
    pub p: u64,
    pub v_disc: i64,
    pub reduction: ReductionType,
    pub q3_condition: Option<Q3Condition>,
    pub neron_type: Option<NeronType>,
    /// `None` exactly in the unsupported corner (additive potentially good
    /// reduction at 2).
    pub gl2: Option<LocalGl2Data>,
    pub sym3: Option<Sym3LocalData>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtkinLehnerSign {
    pub p: u64,
    pub sign: SignExpr,
    pub resolved: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    /// Conductor `N` of the curve.
    pub conductor: BigUint,
    /// Paramodular level `M` of the lift.
    pub level: BigUint,
    pub per_prime: Vec<PrimeData>,
    pub atkin_lehner: Vec<AtkinLehnerSign>,
    pub gamma_factor: &'static str,
    pub cm: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    pub root_number_3: RootNumber3,
}

/// The thirteen rational j-invariants of curves with complex
/// multiplication, keyed by the discriminant of the CM order.
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (-3, 0),
    (-4, 1728),
    (-7, -3375),
    (-8, 8000),
    (-11, -32768),
    (-12, 54000),
    (-16, 287496),
    (-19, -884736),
    (-27, -12288000),
    (-28, 16581375),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

/// Whether `j` is one of the thirteen rational CM j-invariants.
pub fn is_cm(j: &BigRational) -> bool {
    if !j.is_integer() {
        return false;
    }
    let j = j.to_integer();
    CM_J_INVARIANTS.iter().any(|(_, cm)| j == BigInt::from(*cm))
}

/// The primes dividing the minimal discriminant, with multiplicities.
pub fn bad_primes(inv: &Invariants) -> Result<Vec<(u64, u32)>, GlobalError> {
    Ok(factor(&inv.discriminant)?)
}

/// Classifies every bad prime of a minimal model and attaches the lift
/// data, running the two-route conductor cross-checks on the way.
pub fn classify_bad_primes(inv: &Invariants) -> Result<Vec<PrimeData>, GlobalError> {
    let mut out = Vec::new();
    let mut unsupported = false;
    for (p, _) in bad_primes(inv)? {
        let PrimeLocal { p, v_disc, reduction, q3, outcome } = classify_at(inv, p)?;
        let (gl2, sym3) = match outcome {
            ClassifyOutcome::UnsupportedAtTwo => {
                unsupported = true;
                (None, None)
            }
            ClassifyOutcome::Data(d) => {
                if d.conductor_exponent != d.conductor_from_kind() {
                    return Err(GlobalError::InternalCheck(format!(
                        "a(pi_{p}) = {} but the representation shape gives {}",
                        d.conductor_exponent,
                        d.conductor_from_kind()
                    )));
                }
                let meta = Sym3Meta {
                    p,
                    q3_condition: q3.map(|(c, _)| c),
                    legendre_delta_prime_3: if p == 3 {
                        Some(legendre_delta_prime_3(inv)?)
                    } else {
                        None
                    },
                };
                let s = sym3_local(&d, &meta)?;
                let general = sym3_conductor_general(&d)?;
                if general != s.conductor_exponent {
                    return Err(GlobalError::InternalCheck(format!(
                        "sym3 conductor at {p}: table gives {}, character formula gives {general}",
                        s.conductor_exponent
                    )));
                }
                (Some(d), Some(s))
            }
        };
        out.push(PrimeData {
            p,
            v_disc,
            reduction,
            q3_condition: q3.map(|(c, _)| c),
            neron_type: q3.map(|(_, n)| n),
            gl2,
            sym3,
        });
    }
    if unsupported {
        return Err(GlobalError::UnsupportedAtTwo { partial: out });
    }
    Ok(out)
}

fn pow_u64(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// Closed form for the level: `N` times `p^2` over the bad primes where the
/// lift gains conductor, i.e. all except those with integral `j` and
/// `v_p(disc) = 0 mod 4`.
fn closed_form_level(inv: &Invariants, per_prime: &[PrimeData], conductor: &BigUint) -> BigUint {
    let mut m = conductor.clone();
    for d in per_prime {
        let j_integral = inv.j_integral_at(d.p);
        if !(j_integral && d.v_disc % 4 == 0) {
            m *= pow_u64(d.p, 2);
        }
    }
    m
}

/// Assembles the global report for a minimal model.
pub fn assemble_global(
    inv: &Invariants,
    opts: &AnalysisOptions,
) -> Result<GlobalReport, GlobalError> {
    let per_prime = classify_bad_primes(inv)?;
    let mut conductor = BigUint::from(1u32);
    let mut level = BigUint::from(1u32);
    for d in &per_prime {
        let gl2 = d.gl2.as_ref().expect("classified");
        let s = d.sym3.as_ref().expect("classified");
        conductor *= pow_u64(d.p, gl2.conductor_exponent);
        level *= pow_u64(d.p, s.conductor_exponent);
    }
    // two-at-worst-multiplicative hypothesis for the closed level formula
    let two_tame = inv.v_disc(2) == Valuation::Finite(0) || inv.v_c4(2) == Valuation::Finite(0);
    if two_tame {
        let closed = closed_form_level(inv, &per_prime, &conductor);
        if closed != level {
            return Err(GlobalError::InternalCheck(format!(
                "level {level} disagrees with the closed form {closed}"
            )));
        }
    }
    let w3 = opts.root_number_3.resolve();
    let atkin_lehner: Vec<AtkinLehnerSign> = per_prime
        .iter()
        .map(|d| {
            let sign = d.sym3.as_ref().expect("classified").epsilon;
            AtkinLehnerSign { p: d.p, sign, resolved: sign.resolve(w3) }
        })
        .collect();
    let cm = is_cm(&inv.j);
    let mut warnings = Vec::new();
    if cm {
        warnings.push(
            "the curve has complex multiplication; the lifting theorem assumes non-CM, so the \
             global paramodular interpretation does not apply (local data remain valid)"
                .to_string(),
        );
    }
    if atkin_lehner.iter().any(|a| a.resolved.is_none()) {
        warnings.push(
            "the Atkin-Lehner sign at 3 is symbolic in w(E/Q_3); supply --root-number-3 to \
             resolve it"
                .to_string(),
        );
    }
    Ok(GlobalReport {
        conductor,
        level,
        per_prime,
        atkin_lehner,
        gamma_factor: GAMMA_FACTOR_NOTE,
        cm,
        warnings,
    })
}
