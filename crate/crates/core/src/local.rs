//! Per-prime classification: reduction type of the minimal model and the
//! attached `GL(2, Q_p)` representation data.
//!
//! Every function here is a pure function of the invariants of a model that
//! is assumed minimal at the prime in question; the analysis driver in
//! [`crate::report`] enforces minimality before calling in. A non-minimal
//! model cannot silently misclassify in the 3-adic branch: its valuation
//! triple matches no condition row and the classifier reports that.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::padic::{
    int_unit_part, legendre, quad_char_class, PadicError, QuadCharClass, QuadCharKind, Valuation,
};
use crate::weierstrass::Invariants;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("gamma invariant undefined: c6 = 0")]
    GammaUndefined,
    #[error("no 3-adic condition row matches (model not minimal or not additive potentially good)")]
    NoQ3ConditionMatches,
    #[error("condition P4 is unreachable over Q_3")]
    P4OverQ3,
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    AdditivePotentiallyMultiplicative,
    AdditivePotentiallyGood,
}

impl ReductionType {
    pub fn is_multiplicative(self) -> bool {
        matches!(
            self,
            ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            ReductionType::Good => "good",
            ReductionType::SplitMultiplicative => "split-multiplicative",
            ReductionType::NonsplitMultiplicative => "nonsplit-multiplicative",
            ReductionType::AdditivePotentiallyMultiplicative => {
                "additive-potentially-multiplicative"
            }
            ReductionType::AdditivePotentiallyGood => "additive-potentially-good",
        }
    }
}

/// Description of the local `GL(2, Q_p)` representation attached to the
/// curve, with its conductor exponent `a(pi_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGl2Data {
    pub kind: Gl2Kind,
    pub conductor_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gl2Kind {
    /// Good reduction: unramified principal series.
    UnramifiedGood,
    /// `chi St` with `chi` the quadratic character of the gamma invariant.
    TwistedSteinberg { character: QuadCharClass },
    /// `chi x chi^{-1}` with `a(chi) = chi_conductor` and `chi` of the given
    /// order on the units.
    PrincipalSeries { chi_conductor: u32, chi_unit_order: u32 },
    /// Induced from a character `xi` of a quadratic extension `F/Q_p`.
    /// `xi_at_uniformizer` is `None` when the value is not pinned down.
    DihedralSupercuspidal {
        field_ramified: bool,
        xi_conductor: u32,
        xi_unit_order: u32,
        xi_at_uniformizer: Option<i8>,
    },
}

impl LocalGl2Data {
    /// Conductor exponent recomputed from the representation shape alone:
    /// `2 a(chi)` for principal series, `1` or `2 a(char)` for Steinberg
    /// twists, `2 a(xi)` or `1 + a(xi)` for dihedral representations. Used
    /// as a cross-check against the table-derived exponent.
    pub fn conductor_from_kind(&self) -> u32 {
        match &self.kind {
            Gl2Kind::UnramifiedGood => 0,
            Gl2Kind::TwistedSteinberg { character } => {
                if character.kind == QuadCharKind::Ramified {
                    2 * character.conductor_exponent
                } else {
                    1
                }
            }
            Gl2Kind::PrincipalSeries { chi_conductor, .. } => 2 * chi_conductor,
            Gl2Kind::DihedralSupercuspidal { field_ramified, xi_conductor, .. } => {
                if *field_ramified {
                    1 + xi_conductor
                } else {
                    2 * xi_conductor
                }
            }
        }
    }
}

/// `gamma = -c4/c6`, the square class governing the potentially
/// multiplicative cases.
pub fn gamma_invariant(inv: &Invariants) -> Result<BigRational, LocalError> {
    if inv.c6.is_zero() {
        return Err(LocalError::GammaUndefined);
    }
    Ok(BigRational::new(-inv.c4.clone(), inv.c6.clone()))
}

/// Reduction type of a model minimal at `p`.
///
/// Good iff `v(disc) = 0`; multiplicative iff `v(disc) > 0` and
/// `v(c4) = 0`, split or nonsplit according to the quadratic character of
/// the gamma invariant; otherwise additive, potentially good iff
/// `3 v(c4) >= v(disc)`.
pub fn reduction_type(inv: &Invariants, p: u64) -> Result<ReductionType, LocalError> {
    let vd = inv.v_disc(p);
    let vc4 = inv.v_c4(p);
    if vd == Valuation::Finite(0) {
        return Ok(ReductionType::Good);
    }
    if vc4 == Valuation::Finite(0) {
        let gamma = gamma_invariant(inv)?;
        let class = quad_char_class(&gamma, p)?;
        return match class.kind {
            QuadCharKind::Trivial => Ok(ReductionType::SplitMultiplicative),
            QuadCharKind::UnramifiedNontrivial => Ok(ReductionType::NonsplitMultiplicative),
            QuadCharKind::Ramified => Err(LocalError::Internal(
                "ramified gamma character on a multiplicative fibre",
            )),
        };
    }
    if vc4.scaled(3) < vd {
        Ok(ReductionType::AdditivePotentiallyMultiplicative)
    } else {
        Ok(ReductionType::AdditivePotentiallyGood)
    }
}

/// Potentially multiplicative case (`j` not p-integral): the representation
/// is the Steinberg twist by the gamma character.
pub fn classify_pot_mult(inv: &Invariants, p: u64) -> Result<LocalGl2Data, LocalError> {
    if inv.v_c4(p).scaled(3) >= inv.v_disc(p) {
        return Err(LocalError::Precondition("j is p-integral"));
    }
    let gamma = gamma_invariant(inv)?;
    let character = quad_char_class(&gamma, p)?;
    let conductor_exponent = if character.kind == QuadCharKind::Ramified {
        2 * character.conductor_exponent
    } else {
        1
    };
    Ok(LocalGl2Data { kind: Gl2Kind::TwistedSteinberg { character }, conductor_exponent })
}

/// Ramification degree `e = 12 / gcd(v(disc), 12)` of the good-reduction
/// field in the potentially good case.
pub fn ramification_degree(v_disc: i64) -> u32 {
    (12 / v_disc.gcd(&12)) as u32
}

/// Additive, potentially good reduction at `p >= 5`: principal series when
/// `(p - 1) v(disc) = 0 mod 12`, otherwise dihedral supercuspidal induced
/// from the unramified quadratic extension.
pub fn classify_pot_good_large_p(inv: &Invariants, p: u64) -> Result<LocalGl2Data, LocalError> {
    if p < 5 {
        return Err(LocalError::Precondition("p >= 5 required"));
    }
    let vd = match inv.v_disc(p) {
        Valuation::Finite(v) if v > 0 => v,
        _ => return Err(LocalError::Precondition("additive reduction required")),
    };
    if inv.v_c4(p) == Valuation::Finite(0) {
        return Err(LocalError::Precondition("additive reduction required"));
    }
    if inv.v_c4(p).scaled(3) < inv.v_disc(p) {
        return Err(LocalError::Precondition("j must be p-integral"));
    }
    let e = ramification_degree(vd);
    if !matches!(e, 2 | 3 | 4 | 6) {
        return Err(LocalError::Internal(
            "v(disc) outside the minimal additive range at p >= 5",
        ));
    }
    let principal = ((p - 1) % 12) * (vd as u64 % 12) % 12 == 0;
    if principal {
        // an order-e character of the cyclic unit quotient must exist
        if (p - 1) % e as u64 != 0 {
            return Err(LocalError::Internal("order-e character cannot exist on F_p^x"));
        }
        Ok(LocalGl2Data {
            kind: Gl2Kind::PrincipalSeries { chi_conductor: 1, chi_unit_order: e },
            conductor_exponent: 2,
        })
    } else {
        Ok(LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 1,
                xi_unit_order: e,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 2,
        })
    }
}

/// The named 3-adic conditions on `(v(disc), v(c4), v(c6))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Q3Condition {
    P2,
    P3,
    P4,
    P6,
    S3,
    S4,
    S6,
    S6Prime,
    S6DoublePrime,
}

impl Q3Condition {
    pub const ALL: [Q3Condition; 9] = [
        Q3Condition::P2,
        Q3Condition::P3,
        Q3Condition::P4,
        Q3Condition::P6,
        Q3Condition::S3,
        Q3Condition::S4,
        Q3Condition::S6,
        Q3Condition::S6Prime,
        Q3Condition::S6DoublePrime,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Q3Condition::P2 => "P2",
            Q3Condition::P3 => "P3",
            Q3Condition::P4 => "P4",
            Q3Condition::P6 => "P6",
            Q3Condition::S3 => "S3",
            Q3Condition::S4 => "S4",
            Q3Condition::S6 => "S6",
            Q3Condition::S6Prime => "S6'",
            Q3Condition::S6DoublePrime => "S6''",
        }
    }
}

/// Kodaira-Neron fibre types carried as informational metadata by the
/// matched condition row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeronType {
    I0Star,
    II,
    IIStar,
    III,
    IIIStar,
    IV,
    IVStar,
}

impl NeronType {
    pub fn label(self) -> &'static str {
        match self {
            NeronType::I0Star => "I0*",
            NeronType::II => "II",
            NeronType::IIStar => "II*",
            NeronType::III => "III",
            NeronType::IIIStar => "III*",
            NeronType::IV => "IV",
            NeronType::IVStar => "IV*",
        }
    }
}

fn fin(v: i64) -> Valuation {
    Valuation::Finite(v)
}

/// The auxiliary congruence `(c6/3^a)^2 + 2 = c4/3^b (mod 9)`. The callers
/// guarantee that both divisions are exact; `c4 = 0` contributes residue 0.
fn q3_congruence(inv: &Invariants, c6_shift: u32, c4_shift: u32) -> bool {
    let nine = BigInt::from(9);
    let c6_part: BigInt = &inv.c6 / BigInt::from(3).pow(c6_shift);
    let c4_part: BigInt = if inv.c4.is_zero() {
        BigInt::zero()
    } else {
        &inv.c4 / BigInt::from(3).pow(c4_shift)
    };
    (&c6_part * &c6_part + BigInt::from(2) - c4_part).mod_floor(&nine).is_zero()
}

/// Whether `disc` is a square in `Q_3^x`: even valuation and unit part
/// `1 mod 3`.
fn disc_is_q3_square(inv: &Invariants) -> bool {
    let v = inv.v_disc(3).finite().expect("nonzero discriminant");
    if v % 2 != 0 {
        return false;
    }
    let u = int_unit_part(&inv.discriminant, 3);
    u.mod_floor(&BigInt::from(3)) == BigInt::from(1)
}

/// Evaluates one 3-adic condition row against the invariants, returning the
/// Neron type of the matched sub-row. Every condition is decidable
/// independently of the others; exactly one is supposed to hold for a
/// minimal additive potentially good model over `Q_3`.
pub fn q3_condition_match(cond: Q3Condition, inv: &Invariants) -> Option<NeronType> {
    let vd = inv.v_disc(3).finite()?;
    let v4 = inv.v_c4(3);
    let v6 = inv.v_c6(3);
    let dsq = disc_is_q3_square(inv);
    // -1 is not a square in F_3, so the reducibility condition of P4 fails
    // identically over Q_3 and its valuation rows belong to S4.
    let minus_one_square = false;
    match cond {
        Q3Condition::P2 => {
            if vd == 6 && ((v4 == fin(2) && v6 == fin(3)) || (v4 == fin(3) && v6 >= fin(6))) {
                Some(NeronType::I0Star)
            } else {
                None
            }
        }
        Q3Condition::P4 | Q3Condition::S4 => {
            let wanted = cond == Q3Condition::P4;
            if minus_one_square != wanted {
                return None;
            }
            if vd == 3
                && ((v4 >= fin(2) && v6 == fin(3) && q3_congruence(inv, 3, 1))
                    || (v4 == fin(2) && v6 >= fin(5)))
            {
                Some(NeronType::III)
            } else if vd == 9
                && ((v4 >= fin(4) && v6 == fin(6) && q3_congruence(inv, 6, 3))
                    || (v4 == fin(4) && v6 >= fin(8)))
            {
                Some(NeronType::IIIStar)
            } else {
                None
            }
        }
        Q3Condition::P3 | Q3Condition::S3 => {
            if dsq != (cond == Q3Condition::P3) {
                return None;
            }
            if vd == 4 && v4 == fin(2) && v6 == fin(3) {
                Some(NeronType::II)
            } else if vd == 12 && v4 == fin(5) && v6 == fin(8) {
                Some(NeronType::IIStar)
            } else {
                None
            }
        }
        Q3Condition::P6 | Q3Condition::S6 => {
            if dsq != (cond == Q3Condition::P6) {
                return None;
            }
            if vd == 6 && v4 == fin(3) && v6 == fin(5) {
                Some(NeronType::IV)
            } else if vd == 10 && v4 == fin(4) && v6 == fin(6) {
                Some(NeronType::IVStar)
            } else {
                None
            }
        }
        Q3Condition::S6Prime => {
            if dsq {
                return None;
            }
            if vd == 3
                && ((v4 >= fin(2) && v6 == fin(3) && !q3_congruence(inv, 3, 1))
                    || (v4 == fin(2) && v6 == fin(4)))
            {
                Some(NeronType::II)
            } else if vd == 5 && v4 == fin(2) && v6 == fin(3) {
                Some(NeronType::IV)
            } else if vd == 9
                && ((v4 >= fin(4) && v6 == fin(6) && !q3_congruence(inv, 6, 3))
                    || (v4 == fin(4) && v6 == fin(7)))
            {
                Some(NeronType::IVStar)
            } else if vd == 11 && v4 == fin(4) && v6 == fin(6) {
                Some(NeronType::IIStar)
            } else {
                None
            }
        }
        Q3Condition::S6DoublePrime => {
            if dsq {
                return None;
            }
            if vd == 5 && v4 >= fin(3) && v6 == fin(4) {
                Some(NeronType::II)
            } else if vd == 7 && v4 >= fin(4) && v6 == fin(5) {
                Some(NeronType::IV)
            } else if vd == 11 && v4 >= fin(5) && v6 == fin(7) {
                Some(NeronType::IVStar)
            } else if vd == 13 && v4 >= fin(6) && v6 == fin(8) {
                Some(NeronType::IIStar)
            } else {
                None
            }
        }
    }
}

/// Result of the 3-adic classification of an additive, potentially good
/// model: the matched condition, its fibre type, and the representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q3Classification {
    pub condition: Q3Condition,
    pub neron: NeronType,
    pub data: LocalGl2Data,
}

/// Classifies an additive, potentially good model over `Q_3` by matching
/// the condition table. Exactly one condition must match; zero matches
/// signal a non-minimal or non-additive model, and more than one would be
/// an internal table error.
pub fn classify_q3(inv: &Invariants) -> Result<Q3Classification, LocalError> {
    let vd = inv.v_disc(3);
    if vd <= Valuation::Finite(0) || inv.v_c4(3) == Valuation::Finite(0) {
        return Err(LocalError::Precondition("additive reduction at 3 required"));
    }
    if inv.v_c4(3).scaled(3) < vd {
        return Err(LocalError::Precondition("j must be 3-integral"));
    }
    let mut matched: Option<(Q3Condition, NeronType)> = None;
    for cond in Q3Condition::ALL {
        if let Some(neron) = q3_condition_match(cond, inv) {
            if matched.is_some() {
                return Err(LocalError::Internal("two 3-adic condition rows match"));
            }
            matched = Some((cond, neron));
        }
    }
    let (condition, neron) = matched.ok_or(LocalError::NoQ3ConditionMatches)?;
    let data = match condition {
        Q3Condition::P4 => return Err(LocalError::P4OverQ3),
        Q3Condition::P2 => LocalGl2Data {
            kind: Gl2Kind::PrincipalSeries { chi_conductor: 1, chi_unit_order: 2 },
            conductor_exponent: 2,
        },
        Q3Condition::P3 => LocalGl2Data {
            kind: Gl2Kind::PrincipalSeries { chi_conductor: 2, chi_unit_order: 3 },
            conductor_exponent: 4,
        },
        Q3Condition::P6 => LocalGl2Data {
            kind: Gl2Kind::PrincipalSeries { chi_conductor: 2, chi_unit_order: 6 },
            conductor_exponent: 4,
        },
        Q3Condition::S4 => LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 1,
                xi_unit_order: 4,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 2,
        },
        Q3Condition::S3 => LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 2,
                xi_unit_order: 3,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 4,
        },
        Q3Condition::S6 => LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 2,
                xi_unit_order: 6,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 4,
        },
        Q3Condition::S6Prime => LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: true,
                xi_conductor: 2,
                xi_unit_order: 6,
                xi_at_uniformizer: None,
            },
            conductor_exponent: 3,
        },
        Q3Condition::S6DoublePrime => LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: true,
                xi_conductor: 4,
                xi_unit_order: 6,
                xi_at_uniformizer: None,
            },
            conductor_exponent: 5,
        },
    };
    if data.conductor_exponent != data.conductor_from_kind() {
        return Err(LocalError::Internal("conductor exponent mismatch in 3-adic table"));
    }
    Ok(Q3Classification { condition, neron, data })
}

/// Outcome of classification at a prime: either representation data or the
/// one unsupported corner (additive potentially good reduction at 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyOutcome {
    Data(LocalGl2Data),
    UnsupportedAtTwo,
}

/// Classification at `p = 2`: good or potentially multiplicative reduction
/// is handled; additive potentially good reduction at 2 is outside every
/// table and surfaces as a structured marker.
pub fn classify_p2(inv: &Invariants) -> Result<ClassifyOutcome, LocalError> {
    let vd = inv.v_disc(2);
    if vd == Valuation::Finite(0) {
        return Ok(ClassifyOutcome::Data(LocalGl2Data {
            kind: Gl2Kind::UnramifiedGood,
            conductor_exponent: 0,
        }));
    }
    if inv.v_c4(2).scaled(3) < vd {
        return Ok(ClassifyOutcome::Data(classify_pot_mult(inv, 2)?));
    }
    Ok(ClassifyOutcome::UnsupportedAtTwo)
}

/// Externally supplied local root number at 3, needed only when the curve
/// falls in the ramified supercuspidal conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootNumber3 {
    #[default]
    Symbolic,
    Supplied(i8),
}

impl RootNumber3 {
    /// Pass-through of the configured value; `None` means symbolic.
    pub fn resolve(self) -> Option<i8> {
        match self {
            RootNumber3::Symbolic => None,
            RootNumber3::Supplied(w) => Some(w),
        }
    }
}

/// Per-prime classification result as consumed by the lift layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeLocal {
    pub p: u64,
    pub v_disc: i64,
    pub reduction: ReductionType,
    pub q3: Option<(Q3Condition, NeronType)>,
    pub outcome: ClassifyOutcome,
}

/// Full classification at one bad prime of a minimal model.
pub fn classify_at(inv: &Invariants, p: u64) -> Result<PrimeLocal, LocalError> {
    let reduction = reduction_type(inv, p)?;
    let v_disc = inv.v_disc(p).finite().unwrap_or(0);
    let (outcome, q3) = match reduction {
        ReductionType::Good => (
            ClassifyOutcome::Data(LocalGl2Data {
                kind: Gl2Kind::UnramifiedGood,
                conductor_exponent: 0,
            }),
            None,
        ),
        ReductionType::SplitMultiplicative
        | ReductionType::NonsplitMultiplicative
        | ReductionType::AdditivePotentiallyMultiplicative => {
            (ClassifyOutcome::Data(classify_pot_mult(inv, p)?), None)
        }
        ReductionType::AdditivePotentiallyGood => match p {
            2 => (ClassifyOutcome::UnsupportedAtTwo, None),
            3 => {
                let q = classify_q3(inv)?;
                (ClassifyOutcome::Data(q.data), Some((q.condition, q.neron)))
            }
            _ => (ClassifyOutcome::Data(classify_pot_good_large_p(inv, p)?), None),
        },
    };
    Ok(PrimeLocal { p, v_disc, reduction, q3, outcome })
}

/// `(Delta'/3)` where `Delta' = 3^{-v_3(disc)} disc`.
pub fn legendre_delta_prime_3(inv: &Invariants) -> Result<i8, LocalError> {
    let u = int_unit_part(&inv.discriminant, 3);
    Ok(legendre(&u, 3)? as i8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::{invariants, Curve};

    fn inv(c: [i64; 5]) -> Invariants {
        invariants(&Curve::from_coeffs(c)).unwrap()
    }

    #[test]
    fn reduction_type_examples() {
        assert_eq!(
            reduction_type(&inv([0, -1, 1, -10, -20]), 11).unwrap(),
            ReductionType::SplitMultiplicative
        );
        assert_eq!(
            reduction_type(&inv([0, 0, 1, -1, 0]), 37).unwrap(),
            ReductionType::NonsplitMultiplicative
        );
        assert_eq!(
            reduction_type(&inv([0, 0, 1, 0, 2]), 3).unwrap(),
            ReductionType::AdditivePotentiallyGood
        );
        assert_eq!(reduction_type(&inv([0, 0, 1, -1, 0]), 2).unwrap(), ReductionType::Good);
    }

    #[test]
    fn gamma_examples() {
        let i = inv([0, -1, 1, -10, -20]);
        assert_eq!(i.c4, BigInt::from(496));
        assert_eq!(i.c6, BigInt::from(20008));
        assert_eq!(
            gamma_invariant(&i).unwrap(),
            BigRational::new(BigInt::from(-62), BigInt::from(2501))
        );
        let i = inv([0, 0, 1, -1, 0]);
        assert_eq!(
            gamma_invariant(&i).unwrap(),
            BigRational::new(BigInt::from(2), BigInt::from(9))
        );
        let i = inv([0, 0, 0, -1, 0]);
        assert_eq!(gamma_invariant(&i), Err(LocalError::GammaUndefined));
    }

    #[test]
    fn pot_mult_examples() {
        let d = classify_pot_mult(&inv([0, -1, 1, -10, -20]), 11).unwrap();
        assert_eq!(d.conductor_exponent, 1);
        match d.kind {
            Gl2Kind::TwistedSteinberg { character } => {
                assert_eq!(character.kind, QuadCharKind::Trivial)
            }
            _ => panic!("expected Steinberg twist"),
        }

        let d = classify_pot_mult(&inv([0, 0, 1, -1, 0]), 37).unwrap();
        assert_eq!(d.conductor_exponent, 1);
        match d.kind {
            Gl2Kind::TwistedSteinberg { character } => {
                assert_eq!(character.kind, QuadCharKind::UnramifiedNontrivial)
            }
            _ => panic!("expected Steinberg twist"),
        }
    }

    #[test]
    fn pot_mult_at_two_ramified_classes() {
        // additive potentially multiplicative at 2 with odd v_2(gamma):
        // character conductor 3, so a(pi) = 6
        let i = inv([0, -4, 0, -284, -3616]);
        assert_eq!(i.v_disc(2), Valuation::Finite(19));
        assert_eq!(i.v_c4(2), Valuation::Finite(6));
        assert_eq!(
            reduction_type(&i, 2).unwrap(),
            ReductionType::AdditivePotentiallyMultiplicative
        );
        let d = classify_pot_mult(&i, 2).unwrap();
        assert_eq!(d.conductor_exponent, 6);
        match d.kind {
            Gl2Kind::TwistedSteinberg { character } => {
                assert_eq!(character.kind, QuadCharKind::Ramified);
                assert_eq!(character.conductor_exponent, 3);
            }
            _ => panic!("expected Steinberg twist"),
        }

        // even v_2(gamma), unit class 3: character conductor 2, a(pi) = 4
        let i = inv([0, -1, 0, -296, -3984]);
        assert_eq!(i.v_disc(2), Valuation::Finite(16));
        let d = classify_pot_mult(&i, 2).unwrap();
        assert_eq!(d.conductor_exponent, 4);
        match d.kind {
            Gl2Kind::TwistedSteinberg { character } => {
                assert_eq!(character.kind, QuadCharKind::Ramified);
                assert_eq!(character.conductor_exponent, 2);
            }
            _ => panic!("expected Steinberg twist"),
        }
    }

    #[test]
    fn pot_good_large_p_examples() {
        // v_13(disc) = 2: principal series with e = 6
        let i = inv([0, 0, 0, 13, 13]);
        assert_eq!(i.v_disc(13), Valuation::Finite(2));
        let d = classify_pot_good_large_p(&i, 13).unwrap();
        assert_eq!(d.conductor_exponent, 2);
        assert_eq!(d.kind, Gl2Kind::PrincipalSeries { chi_conductor: 1, chi_unit_order: 6 });

        // v_5(disc) = 4: supercuspidal with e = 3
        let i = inv([0, 0, 0, 0, 25]);
        assert_eq!(i.v_disc(5), Valuation::Finite(4));
        let d = classify_pot_good_large_p(&i, 5).unwrap();
        assert_eq!(d.conductor_exponent, 2);
        assert_eq!(
            d.kind,
            Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 1,
                xi_unit_order: 3,
                xi_at_uniformizer: Some(-1),
            }
        );

        // v_7(disc) = 4: (7-1)*4 = 0 mod 12, principal series with e = 3
        let i = inv([0, 0, 0, 0, 49]);
        assert_eq!(i.v_disc(7), Valuation::Finite(4));
        let d = classify_pot_good_large_p(&i, 7).unwrap();
        assert_eq!(d.conductor_exponent, 2);
        assert_eq!(d.kind, Gl2Kind::PrincipalSeries { chi_conductor: 1, chi_unit_order: 3 });
    }

    #[test]
    fn q3_examples() {
        // y^2 + y = x^3: v(disc) = 3, c4 = 0, v(c6) = 3, congruence fails
        let q = classify_q3(&inv([0, 0, 1, 0, 0])).unwrap();
        assert_eq!(q.condition, Q3Condition::S6Prime);
        assert_eq!(q.neron, NeronType::II);
        assert_eq!(q.data.conductor_exponent, 3);

        // y^2 + y = x^3 + 2: v(disc) = 7, c4 = 0, v(c6) = 5
        let q = classify_q3(&inv([0, 0, 1, 0, 2])).unwrap();
        assert_eq!(q.condition, Q3Condition::S6DoublePrime);
        assert_eq!(q.neron, NeronType::IV);
        assert_eq!(q.data.conductor_exponent, 5);

        // y^2 = x^3 + 9x: v(disc) = 6, v(c4) = 3, c6 = 0
        let q = classify_q3(&inv([0, 0, 0, 9, 0])).unwrap();
        assert_eq!(q.condition, Q3Condition::P2);
        assert_eq!(q.neron, NeronType::I0Star);
        assert_eq!(q.data.conductor_exponent, 2);
    }

    #[test]
    fn q3_condition_fixtures_cover_all_rows() {
        let fixtures: [([i64; 5], Q3Condition, u32); 8] = [
            ([0, -3, 0, -18, -14], Q3Condition::P2, 2),
            ([0, -3, 0, -18, -17], Q3Condition::P3, 4),
            ([0, -3, 0, -6, -10], Q3Condition::P6, 4),
            ([0, -3, 0, -18, -16], Q3Condition::S4, 2),
            ([0, -3, 0, -18, -20], Q3Condition::S3, 4),
            ([0, -3, 0, -15, -19], Q3Condition::S6, 4),
            ([0, -3, 0, -18, -19], Q3Condition::S6Prime, 3),
            ([0, -3, 0, -15, -16], Q3Condition::S6DoublePrime, 5),
        ];
        for (coeffs, cond, a) in fixtures {
            let q = classify_q3(&inv(coeffs)).unwrap();
            assert_eq!(q.condition, cond, "curve {coeffs:?}");
            assert_eq!(q.data.conductor_exponent, a, "curve {coeffs:?}");
            // exactly one row matches, and it is the classified one
            let hits: Vec<_> = Q3Condition::ALL
                .into_iter()
                .filter(|c| q3_condition_match(*c, &inv(coeffs)).is_some())
                .collect();
            assert_eq!(hits, vec![cond]);
        }
    }

    #[test]
    fn classify_p2_examples() {
        assert_eq!(
            classify_p2(&inv([0, 0, 1, -1, 0])).unwrap(),
            ClassifyOutcome::Data(LocalGl2Data {
                kind: Gl2Kind::UnramifiedGood,
                conductor_exponent: 0
            })
        );
        assert_eq!(
            classify_p2(&inv([0, 0, 0, -1, 0])).unwrap(),
            ClassifyOutcome::UnsupportedAtTwo
        );
        // j not 2-integral: Steinberg twist
        match classify_p2(&inv([1, 0, 0, 0, 16])).unwrap() {
            ClassifyOutcome::Data(d) => {
                assert!(matches!(d.kind, Gl2Kind::TwistedSteinberg { .. }));
            }
            ClassifyOutcome::UnsupportedAtTwo => panic!("multiplicative at 2 is supported"),
        }
    }

    #[test]
    fn root_number_pass_through() {
        assert_eq!(RootNumber3::Supplied(1).resolve(), Some(1));
        assert_eq!(RootNumber3::Supplied(-1).resolve(), Some(-1));
        assert_eq!(RootNumber3::Symbolic.resolve(), None);
    }

    #[test]
    fn legendre_delta_prime_examples() {
        // disc = -2187 = -3^7, unit part -1 = 2 mod 3: nonresidue
        assert_eq!(legendre_delta_prime_3(&inv([0, 0, 1, 0, 2])).unwrap(), -1);
    }
}
