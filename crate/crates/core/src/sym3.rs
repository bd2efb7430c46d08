//! The symmetric cube layer: the explicit 4x4 matrix map on 2x2 matrices,
//! its symplectic similitude form, and the per-prime lift data (conductor
//! exponent, representation type, epsilon sign, spin Euler factor).
//!
//! The conductor exponent of the lift is computed twice on purpose: once
//! through the specialised per-case tables ([`sym3_local`]) and once through
//! the general character-conductor formula ([`sym3_conductor_general`]); the
//! caller asserts they agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::local::{Gl2Kind, LocalGl2Data, Q3Condition};
use crate::padic::QuadCharKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Sym3Error {
    #[error("character unit order {0} is not one of 2, 3, 4, 6")]
    BadCharacterOrder(u32),
    #[error("classification metadata missing for p = 3")]
    MissingQ3Condition,
    #[error("Legendre symbol of the discriminant unit part missing for p = 3")]
    MissingLegendre,
    #[error("no nonzero similitude form solves the linear system")]
    NoSimilitudeForm,
    #[error("local data does not match any lift table row")]
    NoTableRow,
}

pub type Mat2 = [[BigRational; 2]; 2];
pub type Mat4 = [[BigRational; 4]; 4];

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn zero2() -> Mat2 {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

fn zero4() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

fn zero6() -> [BigRational; 6] {
    std::array::from_fn(|_| BigRational::zero())
}

pub fn mat2_from_i64(m: [[i64; 2]; 2]) -> Mat2 {
    [
        [rat_int(m[0][0]), rat_int(m[0][1])],
        [rat_int(m[1][0]), rat_int(m[1][1])],
    ]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = zero2();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..2).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]);
        }
    }
    out
}

pub fn mat2_det(a: &Mat2) -> BigRational {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zero4();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..4).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]);
        }
    }
    out
}

pub fn mat4_transpose(a: &Mat4) -> Mat4 {
    let mut out = zero4();
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            out[j][i] = entry.clone();
        }
    }
    out
}

pub fn mat4_scale(a: &Mat4, c: &BigRational) -> Mat4 {
    let mut out = zero4();
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            out[i][j] = entry * c;
        }
    }
    out
}

/// The symmetric cube of a 2x2 matrix, acting on cubic forms, normalised so
/// that the image lands in the similitude symplectic group with multiplier
/// `det(g)^3`.
pub fn sym3_matrix(g: &Mat2) -> Mat4 {
    let (a, b, c, d) = (&g[0][0], &g[0][1], &g[1][0], &g[1][1]);
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    [
        [
            a * a * a,
            a * a * b,
            a * (b * b),
            -(&third * b * b * b),
        ],
        [
            rat_int(3) * a * a * c,
            rat_int(2) * a * b * c + a * a * d,
            rat_int(2) * a * b * d + b * b * c,
            -(b * b * d),
        ],
        [
            rat_int(3) * a * (c * c),
            rat_int(2) * a * c * d + b * (c * c),
            rat_int(2) * b * c * d + a * d * d,
            -(b * (d * d)),
        ],
        [
            -(rat_int(3) * c * c * c),
            -(rat_int(3) * (c * c) * d),
            -(rat_int(3) * c * (d * d)),
            d * d * d,
        ],
    ]
}

/// Reduced row echelon nullspace of a system over the rationals with six
/// unknowns (the independent entries of an antisymmetric 4x4 matrix).
fn nullspace6(rows: &[[BigRational; 6]]) -> Vec<[BigRational; 6]> {
    let mut m: Vec<[BigRational; 6]> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..6 {
        let pivot = (rank..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..6 {
                    m[r][c] = &m[r][c] - &f * &m[rank][c];
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..6 {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = zero6();
        v[free] = BigRational::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row_idx][free].clone();
        }
        basis.push(v);
    }
    basis
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn antisymmetric_from(v: &[BigRational; 6]) -> Mat4 {
    let mut j = zero4();
    for (idx, (r, c)) in PAIRS.iter().enumerate() {
        j[*r][*c] = v[idx].clone();
        j[*c][*r] = -v[idx].clone();
    }
    j
}

/// Whether `sym3(g)^T J sym3(g) = det(g)^3 J` holds for `g`.
pub fn similitude_holds(j: &Mat4, g: &Mat2) -> bool {
    let s = sym3_matrix(g);
    let lhs = mat4_mul(&mat4_mul(&mat4_transpose(&s), j), &s);
    let det3 = mat2_det(g).pow(3);
    lhs == mat4_scale(j, &det3)
}

/// Finds a nonzero antisymmetric `J` with
/// `sym3(g)^T J sym3(g) = det(g)^3 J` for all `g`, by solving the linear
/// system over a spanning set of sample matrices and verifying the result
/// on an independent set.
pub fn sym3_similitude_form() -> Result<Mat4, Sym3Error> {
    let samples = [
        [[1, 1], [0, 1]],
        [[1, 0], [1, 1]],
        [[2, 0], [0, 1]],
        [[1, 0], [0, 3]],
        [[0, 1], [-1, 0]],
        [[1, 2], [3, 5]],
    ];
    let mut rows: Vec<[BigRational; 6]> = Vec::new();
    for sample in samples {
        let g = mat2_from_i64(sample);
        let s = sym3_matrix(&g);
        let det3 = mat2_det(&g).pow(3);
        // entry (i,k) of S^T J S - det^3 J, linear in the six unknowns
        for i in 0..4 {
            for k in 0..4 {
                let mut row = zero6();
                for (idx, (r, c)) in PAIRS.iter().enumerate() {
                    let mut coeff = &s[*r][i] * &s[*c][k] - &s[*c][i] * &s[*r][k];
                    if (i, k) == (*r, *c) {
                        coeff = coeff - &det3;
                    }
                    if (i, k) == (*c, *r) {
                        coeff = coeff + &det3;
                    }
                    row[idx] = coeff;
                }
                rows.push(row);
            }
        }
    }
    let basis = nullspace6(&rows);
    let j = basis
        .iter()
        .map(antisymmetric_from)
        .find(|j| {
            [
                [[1, 4], [1, 2]],
                [[0, 2], [-3, 1]],
                [[5, 1], [7, 2]],
                [[-1, 2], [2, -3]],
            ]
            .into_iter()
            .all(|g| similitude_holds(j, &mat2_from_i64(g)))
        })
        .ok_or(Sym3Error::NoSimilitudeForm)?;
    // canonical scaling: first nonzero entry above the diagonal equals 1
    let lead = PAIRS
        .iter()
        .map(|(r, c)| j[*r][*c].clone())
        .find(|x| !x.is_zero())
        .expect("nonzero form");
    Ok(mat4_scale(&j, &lead.recip()))
}

/// Representation type of the lift in the standard classification of
/// non-supercuspidal types, plus the genuinely supercuspidal case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepType {
    Unramified,
    TypeI,
    TypeIVa,
    TypeVIII,
    TypeX,
    Supercuspidal,
}

impl RepType {
    pub fn label(self) -> &'static str {
        match self {
            RepType::Unramified => "unramified",
            RepType::TypeI => "I",
            RepType::TypeIVa => "IVa",
            RepType::TypeVIII => "VIII",
            RepType::TypeX => "X",
            RepType::Supercuspidal => "supercuspidal",
        }
    }
}

/// The epsilon sign at 1/2, possibly symbolic in the external root number
/// `w(E/Q_3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignExpr {
    Plus,
    Minus,
    /// `(Delta'/3) * w(E/Q_3)` with the recorded Legendre value.
    LegendreDeltaTimesRoot { legendre: i8 },
    /// `-w(E/Q_3)`.
    MinusRoot,
}

impl SignExpr {
    /// Resolves to a concrete sign, given the external root number at 3
    /// when one was supplied.
    pub fn resolve(self, w3: Option<i8>) -> Option<i8> {
        match self {
            SignExpr::Plus => Some(1),
            SignExpr::Minus => Some(-1),
            SignExpr::LegendreDeltaTimesRoot { legendre } => w3.map(|w| legendre * w),
            SignExpr::MinusRoot => w3.map(|w| -w),
        }
    }

    pub fn render(self) -> String {
        match self {
            SignExpr::Plus => "+1".to_string(),
            SignExpr::Minus => "-1".to_string(),
            SignExpr::LegendreDeltaTimesRoot { legendre } => {
                let sign = if legendre >= 0 { "+" } else { "-" };
                format!("(D'/3)*w(E/Q_3) = {sign}w(E/Q_3)")
            }
            SignExpr::MinusRoot => "-w(E/Q_3)".to_string(),
        }
    }
}

/// Symbolic spin Euler factor at a bad prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LFactor {
    One,
    /// `1/(1 - p^(-3/2 - s))`
    SplitSt(u64),
    /// `1/(1 + p^(-3/2 - s))`
    NonsplitSt(u64),
    /// `1/(1 + p^(-2s))`, i.e. `alpha = i`
    AlphaI(u64),
    /// `1/((1 - a p^(-s))(1 - a^(-1) p^(-s)))` with `|a| = 1` undetermined
    UnitaryUndetermined(u64),
}

impl LFactor {
    pub fn kind_label(self) -> &'static str {
        match self {
            LFactor::One => "one",
            LFactor::SplitSt(_) => "split-steinberg",
            LFactor::NonsplitSt(_) => "nonsplit-steinberg",
            LFactor::AlphaI(_) => "alpha-i",
            LFactor::UnitaryUndetermined(_) => "unitary-undetermined",
        }
    }

    pub fn display(self) -> String {
        match self {
            LFactor::One => "1".to_string(),
            LFactor::SplitSt(p) => format!("1/(1 - {p}^(-3/2 - s))"),
            LFactor::NonsplitSt(p) => format!("1/(1 + {p}^(-3/2 - s))"),
            LFactor::AlphaI(p) => format!("1/(1 + {p}^(-2*s))"),
            LFactor::UnitaryUndetermined(p) => {
                format!("1/((1 - a*{p}^(-s))*(1 - a^(-1)*{p}^(-s))), |a| = 1")
            }
        }
    }
}

/// Per-prime data of the lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sym3LocalData {
    pub conductor_exponent: u32,
    pub rep_type: RepType,
    pub epsilon: SignExpr,
    pub l_factor: LFactor,
}

/// Branch facts the specialised tables key on besides the `GL(2)` data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sym3Meta {
    pub p: u64,
    pub q3_condition: Option<Q3Condition>,
    /// `(Delta'/3)`, required for the ramified supercuspidal signs at 3.
    pub legendre_delta_prime_3: Option<i8>,
}

impl Sym3Meta {
    pub fn for_prime(p: u64) -> Self {
        Sym3Meta { p, q3_condition: None, legendre_delta_prime_3: None }
    }
}

/// Conductor exponent of the cube of a character with the given unit order
/// and conductor, for odd residue characteristic. Cubing sends the unit
/// order `m` to `m / gcd(m, 3)`; an order-2 character is tame, so its
/// conductor is 1.
fn cube_character_conductor(unit_order: u32, conductor: u32) -> Result<u32, Sym3Error> {
    match unit_order {
        3 => Ok(0),
        6 => Ok(1),
        2 | 4 => Ok(conductor),
        other => Err(Sym3Error::BadCharacterOrder(other)),
    }
}

/// Conductor exponent of the lift from the general character formula:
/// principal series `2a(chi^3) + 2a(chi)`, Steinberg twists `3` or
/// `4a(chi^3)`, dihedral `2a(xi^3) + 2a(xi)` (unramified field) or
/// `a(xi^3) + a(xi) + 2` (ramified field).
pub fn sym3_conductor_general(d: &LocalGl2Data) -> Result<u32, Sym3Error> {
    match &d.kind {
        Gl2Kind::UnramifiedGood => Ok(0),
        Gl2Kind::TwistedSteinberg { character } => {
            if character.kind == QuadCharKind::Ramified {
                // the twisting character is quadratic, so its cube is itself
                Ok(4 * character.conductor_exponent)
            } else {
                Ok(3)
            }
        }
        Gl2Kind::PrincipalSeries { chi_conductor, chi_unit_order } => {
            let cube = cube_character_conductor(*chi_unit_order, *chi_conductor)?;
            Ok(2 * cube + 2 * chi_conductor)
        }
        Gl2Kind::DihedralSupercuspidal { field_ramified, xi_conductor, xi_unit_order, .. } => {
            let cube = cube_character_conductor(*xi_unit_order, *xi_conductor)?;
            if *field_ramified {
                Ok(cube + xi_conductor + 2)
            } else {
                Ok(2 * cube + 2 * xi_conductor)
            }
        }
    }
}

/// Produces the per-prime lift data from the specialised tables.
pub fn sym3_local(d: &LocalGl2Data, meta: &Sym3Meta) -> Result<Sym3LocalData, Sym3Error> {
    let p = meta.p;
    match &d.kind {
        Gl2Kind::UnramifiedGood => Ok(Sym3LocalData {
            conductor_exponent: 0,
            rep_type: RepType::Unramified,
            epsilon: SignExpr::Plus,
            l_factor: LFactor::One,
        }),
        Gl2Kind::TwistedSteinberg { character } => {
            let data = match character.kind {
                QuadCharKind::Trivial => Sym3LocalData {
                    conductor_exponent: 3,
                    rep_type: RepType::TypeIVa,
                    epsilon: SignExpr::Minus,
                    l_factor: LFactor::SplitSt(p),
                },
                QuadCharKind::UnramifiedNontrivial => Sym3LocalData {
                    conductor_exponent: 3,
                    rep_type: RepType::TypeIVa,
                    epsilon: SignExpr::Plus,
                    l_factor: LFactor::NonsplitSt(p),
                },
                QuadCharKind::Ramified => Sym3LocalData {
                    conductor_exponent: 4 * character.conductor_exponent,
                    rep_type: RepType::TypeIVa,
                    epsilon: SignExpr::Plus,
                    l_factor: LFactor::One,
                },
            };
            Ok(data)
        }
        Gl2Kind::PrincipalSeries { chi_unit_order, .. } => {
            if p == 3 {
                let cond = meta.q3_condition.ok_or(Sym3Error::MissingQ3Condition)?;
                let (k, l) = match cond {
                    Q3Condition::P2 => (4, LFactor::One),
                    Q3Condition::P3 => (4, LFactor::UnitaryUndetermined(3)),
                    Q3Condition::P6 => (6, LFactor::One),
                    _ => return Err(Sym3Error::NoTableRow),
                };
                Ok(Sym3LocalData {
                    conductor_exponent: k,
                    rep_type: RepType::TypeI,
                    epsilon: SignExpr::Plus,
                    l_factor: l,
                })
            } else {
                let (k, l) = match chi_unit_order {
                    3 => (2, LFactor::UnitaryUndetermined(p)),
                    2 | 4 | 6 => (4, LFactor::One),
                    _ => return Err(Sym3Error::BadCharacterOrder(*chi_unit_order)),
                };
                Ok(Sym3LocalData {
                    conductor_exponent: k,
                    rep_type: RepType::TypeI,
                    epsilon: SignExpr::Plus,
                    l_factor: l,
                })
            }
        }
        Gl2Kind::DihedralSupercuspidal { xi_unit_order, .. } => {
            if p == 3 {
                let cond = meta.q3_condition.ok_or(Sym3Error::MissingQ3Condition)?;
                let data = match cond {
                    Q3Condition::S4 => Sym3LocalData {
                        conductor_exponent: 4,
                        rep_type: RepType::TypeVIII,
                        epsilon: SignExpr::Plus,
                        l_factor: LFactor::One,
                    },
                    Q3Condition::S3 => Sym3LocalData {
                        conductor_exponent: 4,
                        rep_type: RepType::TypeX,
                        epsilon: SignExpr::Minus,
                        l_factor: LFactor::AlphaI(3),
                    },
                    Q3Condition::S6 => Sym3LocalData {
                        conductor_exponent: 6,
                        rep_type: RepType::TypeX,
                        epsilon: SignExpr::Plus,
                        l_factor: LFactor::One,
                    },
                    Q3Condition::S6Prime => Sym3LocalData {
                        conductor_exponent: 5,
                        rep_type: RepType::Supercuspidal,
                        epsilon: SignExpr::LegendreDeltaTimesRoot {
                            legendre: meta
                                .legendre_delta_prime_3
                                .ok_or(Sym3Error::MissingLegendre)?,
                        },
                        l_factor: LFactor::One,
                    },
                    Q3Condition::S6DoublePrime => Sym3LocalData {
                        conductor_exponent: 7,
                        rep_type: RepType::Supercuspidal,
                        epsilon: SignExpr::MinusRoot,
                        l_factor: LFactor::One,
                    },
                    _ => return Err(Sym3Error::NoTableRow),
                };
                Ok(data)
            } else {
                let data = match xi_unit_order {
                    3 => Sym3LocalData {
                        conductor_exponent: 2,
                        rep_type: RepType::TypeX,
                        epsilon: SignExpr::Minus,
                        l_factor: LFactor::AlphaI(p),
                    },
                    4 => Sym3LocalData {
                        conductor_exponent: 4,
                        rep_type: RepType::TypeVIII,
                        epsilon: SignExpr::Plus,
                        l_factor: LFactor::One,
                    },
                    6 => Sym3LocalData {
                        conductor_exponent: 4,
                        rep_type: RepType::TypeX,
                        epsilon: SignExpr::Plus,
                        l_factor: LFactor::One,
                    },
                    other => return Err(Sym3Error::BadCharacterOrder(*other)),
                };
                Ok(data)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::QuadCharClass;

    #[test]
    fn sym3_of_identity_is_identity() {
        let id = mat2_from_i64([[1, 0], [0, 1]]);
        let s = sym3_matrix(&id);
        for (i, row) in s.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                assert_eq!(*entry, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn sym3_of_diagonal() {
        let g = mat2_from_i64([[2, 0], [0, 5]]);
        let s = sym3_matrix(&g);
        let expected = [8i64, 20, 50, 125];
        for (i, row) in s.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                assert_eq!(*entry, if i == j { rat_int(expected[i]) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn sym3_is_a_homomorphism_on_samples() {
        let pairs = [
            ([[1, 2], [3, 4]], [[0, 1], [-1, 2]]),
            ([[2, -1], [5, 3]], [[1, 1], [1, 2]]),
            ([[7, 0], [2, 1]], [[3, -2], [4, -1]]),
        ];
        for (ga, gb) in pairs {
            let a = mat2_from_i64(ga);
            let b = mat2_from_i64(gb);
            let lhs = sym3_matrix(&mat2_mul(&a, &b));
            let rhs = mat4_mul(&sym3_matrix(&a), &sym3_matrix(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn similitude_form_exists_and_works() {
        let j = sym3_similitude_form().unwrap();
        // antisymmetric and nonzero
        assert_eq!(mat4_transpose(&j), mat4_scale(&j, &rat_int(-1)));
        assert!(j.iter().flatten().any(|x| !x.is_zero()));
        // diag(2,1): multiplier det^3 = 8
        let g = mat2_from_i64([[2, 0], [0, 1]]);
        let s = sym3_matrix(&g);
        let lhs = mat4_mul(&mat4_mul(&mat4_transpose(&s), &j), &s);
        assert_eq!(lhs, mat4_scale(&j, &rat_int(8)));
        for g in [[[1, 1], [0, 1]], [[4, 7], [9, 16]], [[-2, 3], [1, -5]]] {
            assert!(similitude_holds(&j, &mat2_from_i64(g)));
        }
    }

    fn steinberg(kind: QuadCharKind, ce: u32) -> LocalGl2Data {
        let a = if kind == QuadCharKind::Ramified { 2 * ce } else { 1 };
        LocalGl2Data {
            kind: Gl2Kind::TwistedSteinberg {
                character: QuadCharClass { kind, conductor_exponent: ce },
            },
            conductor_exponent: a,
        }
    }

    #[test]
    fn conductor_general_examples() {
        assert_eq!(sym3_conductor_general(&steinberg(QuadCharKind::Trivial, 0)).unwrap(), 3);
        assert_eq!(
            sym3_conductor_general(&steinberg(QuadCharKind::UnramifiedNontrivial, 0)).unwrap(),
            3
        );
        assert_eq!(sym3_conductor_general(&steinberg(QuadCharKind::Ramified, 1)).unwrap(), 4);
        assert_eq!(sym3_conductor_general(&steinberg(QuadCharKind::Ramified, 2)).unwrap(), 8);
        assert_eq!(sym3_conductor_general(&steinberg(QuadCharKind::Ramified, 3)).unwrap(), 12);

        // dihedral, unramified field, a(xi) = 1, order 3
        let d = LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 1,
                xi_unit_order: 3,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 2,
        };
        assert_eq!(sym3_conductor_general(&d).unwrap(), 2);

        // principal series, a(chi) = 2, order 6 (the 3-adic P6 shape)
        let d = LocalGl2Data {
            kind: Gl2Kind::PrincipalSeries { chi_conductor: 2, chi_unit_order: 6 },
            conductor_exponent: 4,
        };
        assert_eq!(sym3_conductor_general(&d).unwrap(), 6);
    }

    #[test]
    fn sym3_local_examples() {
        // split multiplicative at 11
        let d = steinberg(QuadCharKind::Trivial, 0);
        let s = sym3_local(&d, &Sym3Meta::for_prime(11)).unwrap();
        assert_eq!(
            s,
            Sym3LocalData {
                conductor_exponent: 3,
                rep_type: RepType::TypeIVa,
                epsilon: SignExpr::Minus,
                l_factor: LFactor::SplitSt(11),
            }
        );

        // supercuspidal with e = 3 at p = 5
        let d = LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: false,
                xi_conductor: 1,
                xi_unit_order: 3,
                xi_at_uniformizer: Some(-1),
            },
            conductor_exponent: 2,
        };
        let s = sym3_local(&d, &Sym3Meta::for_prime(5)).unwrap();
        assert_eq!(
            s,
            Sym3LocalData {
                conductor_exponent: 2,
                rep_type: RepType::TypeX,
                epsilon: SignExpr::Minus,
                l_factor: LFactor::AlphaI(5),
            }
        );

        // S6'' at 3
        let d = LocalGl2Data {
            kind: Gl2Kind::DihedralSupercuspidal {
                field_ramified: true,
                xi_conductor: 4,
                xi_unit_order: 6,
                xi_at_uniformizer: None,
            },
            conductor_exponent: 5,
        };
        let meta = Sym3Meta {
            p: 3,
            q3_condition: Some(Q3Condition::S6DoublePrime),
            legendre_delta_prime_3: Some(-1),
        };
        let s = sym3_local(&d, &meta).unwrap();
        assert_eq!(
            s,
            Sym3LocalData {
                conductor_exponent: 7,
                rep_type: RepType::Supercuspidal,
                epsilon: SignExpr::MinusRoot,
                l_factor: LFactor::One,
            }
        );
    }

    #[test]
    fn sign_resolution() {
        assert_eq!(SignExpr::Plus.resolve(None), Some(1));
        assert_eq!(SignExpr::Minus.resolve(Some(1)), Some(-1));
        assert_eq!(SignExpr::MinusRoot.resolve(None), None);
        assert_eq!(SignExpr::MinusRoot.resolve(Some(-1)), Some(1));
        assert_eq!(
            SignExpr::LegendreDeltaTimesRoot { legendre: -1 }.resolve(Some(-1)),
            Some(1)
        );
        assert_eq!(
            SignExpr::LegendreDeltaTimesRoot { legendre: -1 }.render(),
            "(D'/3)*w(E/Q_3) = -w(E/Q_3)"
        );
    }
}
