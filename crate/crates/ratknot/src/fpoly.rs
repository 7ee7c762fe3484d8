//! F-polynomials of labeled path posets: brute force over order ideals, the
//! segment closed form, the four-case recursion on the last two segments,
//! and the specialized recursion whose mu/nu coefficients are selected by
//! the tail of the type sequence.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{bracket, substitute_poly, FieldElem, MultiPoly, Var};
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::poset::PathPoset;

/// An F-polynomial is a plain polynomial in the y variables, one per poset
/// label; every final (non-intermediate) value is multilinear with all
/// coefficients 1 and constant term 1.
pub type FPolynomial = MultiPoly;

/// The three specializations applied to F-polynomial variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Specialization {
    /// y1 -> l^2 w^(-1) (positive first term) or q^(-2) w (negative);
    /// even labels -> -l^2 q; odd labels >= 3 -> -q^(-1).
    HomflyP { first_term_negative: bool },
    /// y_i -> -t^((-1)^i).
    Alexander,
    /// The HOMFLY specialization followed by l = t^(-1), q = t.
    Jones { first_term_negative: bool },
}

impl Specialization {
    /// The HOMFLY specialization paired with a given continued fraction.
    pub fn homfly_for(cf: &ContinuedFraction) -> Self {
        Specialization::HomflyP { first_term_negative: cf.terms().first().is_some_and(|&c| c < 0) }
    }

    /// The image of y_label.
    pub fn value(&self, label: u32) -> FieldElem {
        match self {
            Specialization::HomflyP { first_term_negative } => {
                if label == 1 {
                    if *first_term_negative {
                        FieldElem::monomial(&[(Var::S, -4)], 1).mul(&FieldElem::w())
                    } else {
                        FieldElem::monomial(&[(Var::L, 2)], 1)
                            .div(&FieldElem::w())
                            .expect("w is nonzero")
                    }
                } else if label.is_multiple_of(2) {
                    FieldElem::monomial(&[(Var::L, 2), (Var::S, 2)], -1)
                } else {
                    FieldElem::monomial(&[(Var::S, -2)], -1)
                }
            }
            Specialization::Alexander => {
                let e = if label.is_multiple_of(2) { 2 } else { -2 };
                FieldElem::monomial(&[(Var::T, e)], -1)
            }
            Specialization::Jones { first_term_negative } => {
                let p = Specialization::HomflyP { first_term_negative: *first_term_negative };
                p.value(label)
                    .substitute(&|v| match v {
                        Var::L => FieldElem::monomial(&[(Var::T, -2)], 1),
                        Var::S => FieldElem::monomial(&[(Var::T, 1)], 1),
                        other => FieldElem::from_poly(MultiPoly::variable(other)),
                    })
                    .expect("monomial substitution cannot fail")
            }
        }
    }
}

/// Apply a specialization to an explicit F-polynomial.
pub fn specialize_f(f: &FPolynomial, spec: &Specialization) -> Result<FieldElem> {
    for v in f.vars() {
        if !matches!(v, Var::Y(_)) {
            return Err(Error::Domain(format!("not an F-polynomial: contains {v:?}")));
        }
    }
    substitute_poly(f, &|v| match v {
        Var::Y(label) => spec.value(label),
        _ => unreachable!(),
    })
}

/// Sum of y-monomials over all order ideals of a labeled poset.
pub fn f_poly_brute(poset: &PathPoset, cap: usize) -> Result<FPolynomial> {
    let ideals = poset.order_ideals(cap)?;
    let sparse = ideals
        .into_iter()
        .map(|ideal| {
            let pairs: Vec<(Var, i32)> =
                ideal.members().iter().map(|&lab| (Var::Y(lab), 1)).collect();
            (pairs, BigInt::one())
        })
        .collect();
    Ok(MultiPoly::from_sparse_terms(sparse))
}

/// Ring interface shared by the plain and the specialized recursion.
trait FValue: Clone {
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl FValue for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
}

impl FValue for FieldElem {
    fn one() -> Self {
        FieldElem::one()
    }
    fn add(&self, other: &Self) -> Self {
        FieldElem::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
}

struct CfShape {
    sums: Vec<u64>,
    types: Vec<i8>,
}

impl CfShape {
    fn of(cf: &ContinuedFraction) -> Result<Self> {
        if !cf.is_poset_valid() {
            return Err(Error::InvalidCf(format!(
                "{cf} does not satisfy the path-poset conditions"
            )));
        }
        let sums = cf.partial_sums();
        if *sums.last().unwrap() > u32::MAX as u64 {
            return Err(Error::ResourceLimit(format!("{cf} has too many crossings")));
        }
        Ok(CfShape { sums, types: cf.type_sequence() })
    }

    fn lambda(&self, m: usize, j: u32) -> u32 {
        if self.types[m] > 0 {
            self.sums[m - 1] as u32 + j
        } else {
            self.sums[m] as u32 - j
        }
    }

    fn member_count(&self, m: usize) -> u32 {
        (self.sums[m] - self.sums[m - 1] - 1) as u32
    }

    /// F(S_m) image: the sum over the nested segment ideals.
    fn segment_sum<V: FValue>(&self, m: usize, y: &dyn Fn(u32) -> V) -> V {
        let mut acc = V::one();
        let mut prod = V::one();
        for j in 1..=self.member_count(m) {
            prod = prod.mul(&y(self.lambda(m, j)));
            acc = acc.add(&prod);
        }
        acc
    }

    /// Product of y over the members of S_m.
    fn segment_product<V: FValue>(&self, m: usize, y: &dyn Fn(u32) -> V) -> V {
        let mut prod = V::one();
        for j in 1..=self.member_count(m) {
            prod = prod.mul(&y(self.lambda(m, j)));
        }
        prod
    }

    /// Connecting-vertex label l_m.
    fn connector(&self, m: usize) -> u32 {
        self.sums[m] as u32
    }
}

/// The recursion on the last two segments, generic in the image of each
/// y-variable. Products over the poset differences come straight from the
/// segment structure.
fn f_recursive_impl<V: FValue>(cf: &ContinuedFraction, y: &dyn Fn(u32) -> V) -> Result<V> {
    let shape = CfShape::of(cf)?;
    let n = cf.len();
    if n == 0 {
        return Ok(V::one());
    }
    let mut prev2 = V::one(); // prefix of length 0
    let mut prev = shape.segment_sum(1, y); // prefix of length 1
    for j in 2..=n {
        let fs = shape.segment_sum(j, y);
        let current = match (shape.types[j - 1], shape.types[j]) {
            (-1, -1) => prev.mul(&fs).add(&prev2.mul(&shape.segment_product(j, y)).neg()),
            (1, -1) => {
                // members missing from the two-shorter prefix poset:
                // S_{j-1}, the connector l_{j-1}, S_j, and the connector
                // l_{j-2} when it exists
                let mut prod = shape
                    .segment_product(j - 1, y)
                    .mul(&y(shape.connector(j - 1)))
                    .mul(&shape.segment_product(j, y));
                if j >= 3 && shape.types[j - 2] != shape.types[j - 1] {
                    prod = prod.mul(&y(shape.connector(j - 2)));
                }
                prev2.mul(&prod).add(&prev.mul(&fs))
            }
            (-1, 1) => prev2.add(&prev.mul(&fs).mul(&y(shape.connector(j - 1)))),
            (1, 1) => {
                let mut prod = shape.segment_product(j - 1, y);
                if j >= 3 && shape.types[j - 2] != shape.types[j - 1] {
                    prod = prod.mul(&y(shape.connector(j - 2)));
                }
                prev.mul(&fs).add(&prev2.mul(&prod).neg())
            }
            _ => unreachable!("poset-valid terms are nonzero"),
        };
        prev2 = prev;
        prev = current;
    }
    Ok(prev)
}

/// F-polynomial by the four-case recursion; equals the brute-force sum.
pub fn f_poly_recursive(cf: &ContinuedFraction) -> Result<FPolynomial> {
    f_recursive_impl(cf, &|label| MultiPoly::variable(Var::Y(label)))
}

/// The closed-form F-polynomial of the m-th segment (1-based).
pub fn f_segment(cf: &ContinuedFraction, m: usize) -> Result<FPolynomial> {
    let shape = CfShape::of(cf)?;
    if m == 0 || m > cf.len() {
        return Err(Error::Index(format!("segment {m} of a length-{} expansion", cf.len())));
    }
    Ok(shape.segment_sum(m, &|label| MultiPoly::variable(Var::Y(label))))
}

/// The specialization pushed through the recursion; same value as
/// `specialize_f(f_poly_recursive(cf))` without materializing the
/// F-polynomial.
pub fn f_specialized_recursive(
    cf: &ContinuedFraction,
    spec: &Specialization,
) -> Result<FieldElem> {
    f_recursive_impl(cf, &|label| spec.value(label))
}

/// The specialized F(S_m) under the HOMFLY specialization of `cf`.
pub fn specialized_segment_sum(cf: &ContinuedFraction, m: usize) -> Result<FieldElem> {
    let shape = CfShape::of(cf)?;
    if m == 0 || m > cf.len() {
        return Err(Error::Index(format!("segment {m} of a length-{} expansion", cf.len())));
    }
    let spec = Specialization::homfly_for(cf);
    Ok(shape.segment_sum(m, &|label| spec.value(label)))
}

/// The specialized product over the members of S_m.
pub fn specialized_segment_product(cf: &ContinuedFraction, m: usize) -> Result<FieldElem> {
    let shape = CfShape::of(cf)?;
    if m == 0 || m > cf.len() {
        return Err(Error::Index(format!("segment {m} of a length-{} expansion", cf.len())));
    }
    let spec = Specialization::homfly_for(cf);
    Ok(shape.segment_product(m, &|label| spec.value(label)))
}

/// The specialized recursion coefficients of the length-n prefix of an even
/// continued fraction: F~_0 = mu F~_2 + nu (1 - q^(-1)) [|b_n|/2]_{l^2} F~_1.
#[derive(Clone, PartialEq, Debug)]
pub struct RecursionCoefficients {
    pub mu: FieldElem,
    pub nu: FieldElem,
}

fn l_pow(e: u64, coef: i64) -> Result<FieldElem> {
    let e = i32::try_from(e).map_err(|_| Error::ResourceLimit(format!("l-exponent {e}")))?;
    Ok(FieldElem::monomial(&[(Var::L, e)], coef))
}

/// The eight-row coefficient table keyed by the tail of the type sequence.
pub fn recursion_coefficients(cf: &ContinuedFraction, n: usize) -> Result<RecursionCoefficients> {
    if cf.is_degenerate() || !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let terms = cf.terms();
    if n < 2 || n > terms.len() {
        return Err(Error::Index(format!("prefix length {n} of {cf}")));
    }
    let types = cf.type_sequence();
    let bn = terms[n - 1].unsigned_abs();
    let bn1 = terms[n - 2].unsigned_abs();
    let b1 = terms[0].unsigned_abs();
    let w_inv = FieldElem::w().inverse().expect("w is nonzero");
    let one = FieldElem::one();
    let q_inv = |coef: i64| FieldElem::monomial(&[(Var::S, -2)], coef);

    let (mu, nu) = if types[n] == -1 {
        let mu = if types[n - 1] == -1 {
            // -prod_{S_n} phi(y) = l^(|b_n|-2) q^(-1)
            l_pow(bn - 2, 1)?.mul(&q_inv(1))
        } else if n == 2 {
            l_pow(bn + b1, 1)?.mul(&w_inv)
        } else if types[n - 2] == -1 {
            l_pow(bn + bn1, 1)?
        } else {
            l_pow(bn + bn1 - 2, -1)?.mul(&q_inv(1))
        };
        (mu, one)
    } else if types[n - 1] == -1 {
        // phi(y_{l_{n-1}}) = -l^2 q since every l_i is even
        (one, FieldElem::monomial(&[(Var::L, 2), (Var::S, 2)], -1))
    } else {
        let mu = if n == 2 {
            l_pow(b1, -1)?.mul(&w_inv)
        } else if types[n - 2] == -1 {
            l_pow(bn1, -1)?
        } else {
            l_pow(bn1 - 2, 1)?.mul(&q_inv(1))
        };
        (mu, FieldElem::one())
    };
    Ok(RecursionCoefficients { mu, nu })
}

/// The specialized F-polynomial of an even continued fraction by the mu/nu
/// recursion, grounded in the directly specialized first segment.
pub fn f_tilde_recursive(cf: &ContinuedFraction) -> Result<FieldElem> {
    if cf.is_degenerate() || !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let n = cf.len();
    if n == 0 {
        return Ok(FieldElem::one());
    }
    let mut prev2 = FieldElem::one();
    let mut prev = specialized_segment_sum(cf, 1)?;
    let one_minus_q_inv =
        FieldElem::from_poly(MultiPoly::one().sub(&MultiPoly::monomial(&[(Var::S, -2)], 1)));
    let l_sq = MultiPoly::monomial(&[(Var::L, 2)], 1);
    for j in 2..=n {
        let coeffs = recursion_coefficients(cf, j)?;
        let half = cf.terms()[j - 1].unsigned_abs() / 2;
        let seg = one_minus_q_inv.mul(&FieldElem::from_poly(bracket(half, &l_sq)));
        let current = coeffs.mu.mul(&prev2).add(&coeffs.nu.mul(&seg).mul(&prev));
        prev2 = prev;
        prev = current;
    }
    Ok(prev)
}
