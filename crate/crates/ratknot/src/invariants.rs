//! Knot invariants of rational links: the m-factor, the HOMFLY polynomial
//! as m times the specialized F-polynomial, an independent skein-recursion
//! oracle, and the Jones/Alexander substitutions.

use crate::algebra::{FieldElem, MultiPoly, Var};
use crate::cf::{canonical_link_form, CanonicalLink, ContinuedFraction, ExtendedRational};
use crate::error::{Error, Result};
use crate::fpoly::{f_specialized_recursive, f_tilde_recursive, Specialization};

/// How to compute a HOMFLY value: the specialized-F-polynomial pipeline or
/// the skein recursion kept as an independent oracle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Theorem,
    Skein,
}

/// The scaling factor m[b1..bn], kept both as a field value and as its
/// decomposition c0 * l^e1 * q^e2 * w^e3 (e2 a half-integer stored as the
/// s-exponent 2*e2, e3 in {-1, 0, 1}).
#[derive(Clone, PartialEq, Debug)]
pub struct MFactor {
    pub value: FieldElem,
    pub sign: i8,
    pub l_exp: i64,
    /// Exponent of s = q^(1/2), i.e. twice the q-exponent.
    pub s_exp: i64,
    pub w_exp: i8,
}

impl MFactor {
    fn from_decomposition(sign: i8, l_exp: i128, s_exp: i128, w_exp: i8) -> Result<MFactor> {
        let le = i32::try_from(l_exp)
            .map_err(|_| Error::ResourceLimit(format!("l-exponent {l_exp}")))?;
        let se = i32::try_from(s_exp)
            .map_err(|_| Error::ResourceLimit(format!("s-exponent {s_exp}")))?;
        let mono = FieldElem::monomial(&[(Var::L, le), (Var::S, se)], sign as i64);
        let value = mono.mul(&FieldElem::w().pow(w_exp as i64).expect("w is invertible"));
        Ok(MFactor { value, sign, l_exp: le as i64, s_exp: se as i64, w_exp })
    }
}

/// The three-case recursion for m, with bases m[] = 1 and
/// m[b1..b_{-1}] = -l^(-1) q^(-1/2) w.
pub fn m_factor(cf: &ContinuedFraction) -> Result<MFactor> {
    if cf.is_degenerate() {
        return MFactor::from_decomposition(-1, -1, -1, 1);
    }
    if !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let types = cf.type_sequence();
    // decompositions of the two previous prefixes, starting at n = -1, 0;
    // exponents accumulate in i128 so extreme terms error instead of wrap
    let mut two_back = (-1i8, -1i128, -1i128, 1i8);
    let mut one_back = (1i8, 0i128, 0i128, 0i8);
    for (j, &b) in cf.terms().iter().enumerate() {
        let abs = b.unsigned_abs() as i128;
        let current = if types[j + 1] == -1 {
            // -l q^(1/2) m[prefix - 1]
            let (c, l, s, w) = one_back;
            (-c, l + 1, s + 1, w)
        } else if types[j] == -1 {
            // l^(-|b|) m[prefix - 2]
            let (c, l, s, w) = two_back;
            (c, l - abs, s, w)
        } else {
            // l^(1-|b|) q^(1/2) m[prefix - 1]
            let (c, l, s, w) = one_back;
            (c, l + 1 - abs, s + 1, w)
        };
        two_back = one_back;
        one_back = current;
    }
    let (c, l, s, w) = one_back;
    MFactor::from_decomposition(c, l, s, w)
}

/// HOMFLY by the specialized-F-polynomial route: `m[cf] * F~[cf]`.
/// The degenerate list is the two-component unlink.
pub fn homfly_theorem(cf: &ContinuedFraction) -> Result<FieldElem> {
    if cf.is_degenerate() {
        return Ok(FieldElem::unlink());
    }
    Ok(m_factor(cf)?.value.mul(&f_tilde_recursive(cf)?))
}

/// HOMFLY by the skein recursion on prefixes:
/// P_0 = l^(-t_n |b_n|) P_2 + (q^(1/2) - q^(-1/2)) (1 - l^(-t_n |b_n|)) / (l - l^(-1)) P_1,
/// grounded at P[] = 1 and the two-component unlink. Independent of the
/// F-polynomial pipeline.
pub fn homfly_oracle(cf: &ContinuedFraction) -> Result<FieldElem> {
    if cf.is_degenerate() {
        return Ok(FieldElem::unlink());
    }
    if !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let types = cf.type_sequence();
    let s_diff = FieldElem::from_poly(
        MultiPoly::monomial(&[(Var::S, 1)], 1).sub(&MultiPoly::monomial(&[(Var::S, -1)], 1)),
    );
    let l_diff = FieldElem::from_poly(
        MultiPoly::monomial(&[(Var::L, 1)], 1).sub(&MultiPoly::monomial(&[(Var::L, -1)], 1)),
    );
    let mut two_back = FieldElem::unlink();
    let mut one_back = FieldElem::one();
    for (j, &b) in cf.terms().iter().enumerate() {
        let e = -(types[j + 1] as i64) * b.unsigned_abs() as i64;
        let e = i32::try_from(e).map_err(|_| Error::ResourceLimit(format!("l-exponent {e}")))?;
        let l_pow = FieldElem::monomial(&[(Var::L, e)], 1);
        let coef = s_diff.mul(&FieldElem::one().sub(&l_pow)).div(&l_diff)?;
        let current = l_pow.mul(&two_back).add(&coef.mul(&one_back));
        two_back = one_back;
        one_back = current;
    }
    Ok(one_back)
}

/// HOMFLY of the rational link C(r), through the canonical even form.
pub fn homfly(r: &ExtendedRational, method: Method) -> Result<FieldElem> {
    match canonical_link_form(r)? {
        CanonicalLink::Unknot => Ok(FieldElem::one()),
        CanonicalLink::TwoUnlink => Ok(FieldElem::unlink()),
        CanonicalLink::Even(cf) => match method {
            Method::Theorem => homfly_theorem(&cf),
            Method::Skein => homfly_oracle(&cf),
        },
    }
}

fn to_t_laurent(value: FieldElem, what: &str) -> Result<MultiPoly> {
    if !value.denominator().is_one() {
        return Err(Error::SubstitutionSingularity(format!(
            "{what} did not reduce to a Laurent polynomial: {value}"
        )));
    }
    Ok(value.numerator().clone())
}

/// V = P at l = t^(-1), q = t, a Laurent polynomial in t^(1/2).
pub fn jones(r: &ExtendedRational, method: Method) -> Result<MultiPoly> {
    let p = homfly(r, method)?;
    let sub = p.substitute(&|v| match v {
        Var::L => FieldElem::monomial(&[(Var::T, -2)], 1),
        Var::S => FieldElem::monomial(&[(Var::T, 1)], 1),
        other => FieldElem::from_poly(MultiPoly::variable(other)),
    })?;
    to_t_laurent(sub, "the Jones substitution")
}

/// Delta = P at l = 1, q = t, a Laurent polynomial in t^(1/2).
pub fn alexander(r: &ExtendedRational, method: Method) -> Result<MultiPoly> {
    let p = homfly(r, method)?;
    let sub = p.substitute(&|v| match v {
        Var::L => FieldElem::one(),
        Var::S => FieldElem::monomial(&[(Var::T, 1)], 1),
        other => FieldElem::from_poly(MultiPoly::variable(other)),
    })?;
    to_t_laurent(sub, "the Alexander substitution")
}

/// Alexander by the corollary route: the leading term, read off the
/// m-factor decomposition at l = 1 (where w becomes -t), times the
/// F-polynomial specialized by y_i -> -t^((-1)^i).
pub fn alexander_via_corollary(cf: &ContinuedFraction) -> Result<MultiPoly> {
    if cf.is_degenerate() {
        // the two-component unlink: l - l^(-1) vanishes at l = 1
        return Ok(MultiPoly::zero());
    }
    if !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let m = m_factor(cf)?;
    // at l = 1: value = sign (-1)^(e3) t^(e2 + e3)
    let coef: i64 = (m.sign as i64) * if m.w_exp % 2 == 0 { 1 } else { -1 };
    let t_exp = m.s_exp + 2 * m.w_exp as i64;
    let t_exp =
        i32::try_from(t_exp).map_err(|_| Error::ResourceLimit(format!("t-exponent {t_exp}")))?;
    let leading = FieldElem::monomial(&[(Var::T, t_exp)], coef);
    let specialized = f_specialized_recursive(cf, &Specialization::Alexander)?;
    to_t_laurent(leading.mul(&specialized), "the Alexander corollary")
}

/// Jones by the specialized route: m at l = t^(-1), q = t, where w becomes
/// 1, times the Jones-specialized F-polynomial. Used as an internal
/// consistency check against `jones`.
pub fn jones_via_specialization(cf: &ContinuedFraction) -> Result<MultiPoly> {
    if cf.is_degenerate() {
        return Ok(MultiPoly::monomial(&[(Var::T, 1)], -1)
            .add(&MultiPoly::monomial(&[(Var::T, -1)], -1)));
    }
    if !cf.is_even() {
        return Err(Error::InvalidCf(format!("{cf} is not an even continued fraction")));
    }
    let m = m_factor(cf)?;
    let t_exp = m.s_exp - 2 * m.l_exp;
    let t_exp =
        i32::try_from(t_exp).map_err(|_| Error::ResourceLimit(format!("t-exponent {t_exp}")))?;
    let leading = FieldElem::monomial(&[(Var::T, t_exp)], m.sign as i64);
    let spec =
        Specialization::Jones { first_term_negative: cf.terms().first().is_some_and(|&c| c < 0) };
    let specialized = f_specialized_recursive(cf, &spec)?;
    to_t_laurent(leading.mul(&specialized), "the Jones specialization")
}

/// Equality of Laurent polynomials up to a unit +-t^(k/2) (or +- a monomial
/// in any variables): compare monomial-shifted cores up to sign.
pub fn equal_up_to_unit(a: &MultiPoly, b: &MultiPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (_, core_a) = a.split_monomial();
    let (_, core_b) = b.split_monomial();
    core_a == core_b || core_a == core_b.neg()
}

/// t -> t^(-1) on a Laurent polynomial in t^(1/2).
pub fn mirror_t(p: &MultiPoly) -> MultiPoly {
    let flipped = crate::algebra::substitute_poly(p, &|v| match v {
        Var::T => FieldElem::monomial(&[(Var::T, -1)], 1),
        other => FieldElem::from_poly(MultiPoly::variable(other)),
    })
    .expect("monomial substitution cannot fail");
    debug_assert!(flipped.denominator().is_one());
    flipped.numerator().clone()
}
