use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::poly::{MultiPoly, Var};
use crate::error::{Error, Result};

/// A reduced fraction of two polynomials. Canonical form: gcd(num, den) is a
/// unit, the denominator is an ordinary polynomial (monomial factors live in
/// the numerator) with content 1 and a positive leading coefficient, so
/// equal values are structurally equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElem {
    num: MultiPoly,
    den: MultiPoly,
}

impl FieldElem {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return FieldElem { num, den: MultiPoly::one() };
        }
        let (shift_n, n) = num.split_monomial();
        let (shift_d, d) = den.split_monomial();
        let g = MultiPoly::gcd(&n, &d);
        let mut n = n.exact_div(&g).expect("gcd divides");
        let mut d = d.exact_div(&g).expect("gcd divides");
        if d.leading_coefficient().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        // the net Laurent monomial moves to the numerator
        let mut shift: Vec<(Var, i32)> = shift_n;
        shift.extend(shift_d.into_iter().map(|(v, e)| (v, -e)));
        if !shift.is_empty() {
            n = n.mul_monomial(&shift);
        }
        FieldElem { num: n, den: d }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        FieldElem { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// coef * prod v^e as a field element.
    pub fn monomial(pairs: &[(Var, i32)], coef: impl Into<BigInt>) -> Self {
        Self::from_poly(MultiPoly::monomial(pairs, coef))
    }

    /// w = (1 - l^2 q)/(1 - q^(-1)).
    pub fn w() -> Self {
        let num = MultiPoly::one().sub(&MultiPoly::monomial(&[(Var::L, 2), (Var::S, 2)], 1));
        let den = MultiPoly::one().sub(&MultiPoly::monomial(&[(Var::S, -2)], 1));
        Self::reduced(num, den)
    }

    /// (l - l^(-1))/(q^(1/2) - q^(-1/2)), the two-component unlink value.
    pub fn unlink() -> Self {
        let num = MultiPoly::monomial(&[(Var::L, 1)], 1)
            .sub(&MultiPoly::monomial(&[(Var::L, -1)], 1));
        let den = MultiPoly::monomial(&[(Var::S, 1)], 1)
            .sub(&MultiPoly::monomial(&[(Var::S, -1)], 1));
        Self::reduced(num, den)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a single term over denominator 1.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.term_count() == 1
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        Self::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Substitute field values for every variable of num and den.
    pub fn substitute(&self, assign: &dyn Fn(Var) -> FieldElem) -> Result<FieldElem> {
        let num = substitute_poly(&self.num, assign)?;
        let den = substitute_poly(&self.den, assign)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.div(&den)
    }

    /// `{"num": [[coef, exps..]], "den": [...]}` against a fixed variable order.
    pub fn to_json(&self, order: &[Var]) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "num": self.num.json_terms(order)?,
            "den": self.den.json_terms(order)?,
        }))
    }

    pub fn from_json(value: &serde_json::Value, order: &[Var]) -> Result<FieldElem> {
        let get = |key: &str| {
            value
                .get(key)
                .ok_or_else(|| Error::Parse(format!("missing `{key}` in fraction JSON")))
        };
        let num = MultiPoly::from_json_terms(get("num")?, order)?;
        let den = MultiPoly::from_json_terms(get("den")?, order)?;
        Self::new(num, den)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&self.num.display_string())
        } else {
            write!(f, "({})/({})", self.num.display_string(), self.den.display_string())
        }
    }
}

/// Substitute a field value for every variable of a polynomial.
///
/// Terms are grouped by their exponents on the non-monomial values, each
/// group's monomial image is accumulated as a single polynomial, and only
/// the handful of group combinations pay for fraction arithmetic. This keeps
/// specializing an F-polynomial linear in its term count.
pub fn substitute_poly(p: &MultiPoly, assign: &dyn Fn(Var) -> FieldElem) -> Result<FieldElem> {
    if p.is_zero() {
        return Ok(FieldElem::zero());
    }
    let vars: Vec<Var> = p.vars().to_vec();
    let values: Vec<FieldElem> = vars.iter().map(|&v| assign(v)).collect();

    // a variable takes the fast path when its value is coef * monomial and
    // every power of it stays integral (nonnegative exponents, or |coef| = 1)
    let mut min_exp = vec![i32::MAX; vars.len()];
    for (m, _) in p.terms() {
        for (j, &e) in m.exponents().iter().enumerate() {
            min_exp[j] = min_exp[j].min(e);
        }
    }
    type SparseTerm = (Vec<(Var, i32)>, BigInt);
    let fast: Vec<Option<SparseTerm>> = values
        .iter()
        .enumerate()
        .map(|(j, val)| {
            let (pairs, coef) = val.numerator().as_monomial()?;
            if !val.denominator().is_one() {
                return None;
            }
            if min_exp[j] < 0 && !coef.abs().is_one() {
                return None;
            }
            Some((pairs, coef.clone()))
        })
        .collect();

    // group key: exponents at the general (slow-path) positions
    let general: Vec<usize> = (0..vars.len()).filter(|&j| fast[j].is_none()).collect();
    let mut groups: HashMap<Vec<i32>, Vec<SparseTerm>> = HashMap::new();
    for (m, c) in p.terms() {
        let key: Vec<i32> = general.iter().map(|&j| m.exponents()[j]).collect();
        let mut coef = c.clone();
        let mut mono: Vec<(Var, i32)> = Vec::new();
        for (j, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if let Some((pairs, vc)) = &fast[j] {
                if e >= 0 {
                    coef *= vc.pow(e as u32);
                } else if vc.is_negative() && e % 2 != 0 {
                    coef = -coef; // (+-1)^e
                }
                mono.extend(pairs.iter().map(|&(v, ve)| (v, ve * e)));
            }
        }
        groups.entry(key).or_default().push((mono, coef));
    }

    let mut power_cache: HashMap<(usize, i32), FieldElem> = HashMap::new();
    let mut acc = FieldElem::zero();
    for (key, sparse) in groups {
        let mut part = FieldElem::from_poly(MultiPoly::from_sparse_terms(sparse));
        for (pos, &j) in general.iter().enumerate() {
            let e = key[pos];
            if e == 0 {
                continue;
            }
            let powed = match power_cache.get(&(j, e)) {
                Some(v) => v.clone(),
                None => {
                    let v = values[j].pow(e as i64)?;
                    power_cache.insert((j, e), v.clone());
                    v
                }
            };
            part = part.mul(&powed);
        }
        acc = acc.add(&part);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::bracket;

    fn lp() -> MultiPoly {
        MultiPoly::variable(Var::L)
    }

    fn qp() -> MultiPoly {
        MultiPoly::monomial(&[(Var::S, 2)], 1)
    }

    fn q_inv() -> FieldElem {
        FieldElem::monomial(&[(Var::S, -2)], 1)
    }

    #[test]
    fn w_definition() {
        // w (1 - q^-1) = 1 - l^2 q
        let lhs = FieldElem::w().mul(&FieldElem::one().sub(&q_inv()));
        let rhs = FieldElem::from_poly(
            MultiPoly::one().sub(&MultiPoly::monomial(&[(Var::L, 2), (Var::S, 2)], 1)),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn w_rewriting_identities() {
        // (1 - l^2)/(1 - q^-1) - l^2 q = (1 - l^2 - l^2 q + l^2)/(1 - q^-1) = w
        let one_minus_l2 = FieldElem::from_poly(MultiPoly::one().sub(&lp().pow(2)));
        let denom = FieldElem::one().sub(&q_inv());
        let l2q = FieldElem::from_poly(lp().pow(2).mul(&qp()));
        let lhs = one_minus_l2.div(&denom).unwrap().sub(&l2q);
        assert_eq!(lhs, FieldElem::w());

        // q^-1 (1 - l^2)/(1 - q^-1) - q^-1 = q^-2 w
        let lhs = q_inv().mul(&one_minus_l2).div(&denom).unwrap().sub(&q_inv());
        let rhs = FieldElem::monomial(&[(Var::S, -4)], 1).mul(&FieldElem::w());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_examples() {
        // (l - l^-1)/(s - s^-1) at l = t^-1, q = t becomes -(t^(1/2) + t^(-1/2))
        let jones_sub = |v: Var| match v {
            Var::L => FieldElem::monomial(&[(Var::T, -2)], 1),
            Var::S => FieldElem::monomial(&[(Var::T, 1)], 1),
            other => FieldElem::from_poly(MultiPoly::variable(other)),
        };
        let got = FieldElem::unlink().substitute(&jones_sub).unwrap();
        let expect = FieldElem::from_poly(
            MultiPoly::monomial(&[(Var::T, 1)], -1).add(&MultiPoly::monomial(&[(Var::T, -1)], -1)),
        );
        assert_eq!(got, expect);

        // w at l = 1, q = t is -t
        let alex_sub = |v: Var| match v {
            Var::L => FieldElem::one(),
            Var::S => FieldElem::monomial(&[(Var::T, 1)], 1),
            other => FieldElem::from_poly(MultiPoly::variable(other)),
        };
        let got = FieldElem::w().substitute(&alex_sub).unwrap();
        assert_eq!(got, FieldElem::monomial(&[(Var::T, 2)], -1));

        // the identity assignment is the identity
        let id = |v: Var| FieldElem::from_poly(MultiPoly::variable(v));
        assert_eq!(FieldElem::w().substitute(&id).unwrap(), FieldElem::w());
    }

    #[test]
    fn field_arithmetic_round_trips() {
        let a = FieldElem::w().add(&FieldElem::monomial(&[(Var::L, -3)], 2));
        let b = FieldElem::unlink();
        assert_eq!(a.div(&b).unwrap().mul(&b), a);
        assert_eq!(a.mul(&a.inverse().unwrap()), FieldElem::one());
        assert_eq!(a.sub(&a), FieldElem::zero());
        assert!(FieldElem::zero().inverse().is_err());
        assert_eq!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()), FieldElem::one());
    }

    #[test]
    fn canonical_form_invariants() {
        let raw_num = MultiPoly::monomial(&[(Var::S, -1)], 2)
            .sub(&MultiPoly::monomial(&[(Var::S, 1), (Var::L, 2)], 2));
        let raw_den = MultiPoly::monomial(&[(Var::S, -2)], 2).sub(&MultiPoly::constant(2));
        let f = FieldElem::new(raw_num, raw_den).unwrap();
        // den is ordinary, primitive, positive leading coefficient
        assert!(f.denominator().is_ordinary());
        assert!(f.denominator().content().is_one());
        assert!(f.denominator().leading_coefficient().is_positive());
        // normalizing twice is normalizing once
        let again = FieldElem::new(f.numerator().clone(), f.denominator().clone()).unwrap();
        assert_eq!(f, again);
        // num and den are jointly content-free even when the value has an
        // intrinsic rational constant
        let half = FieldElem::new(MultiPoly::one(), MultiPoly::constant(2)).unwrap();
        assert_eq!(half.denominator(), &MultiPoly::constant(2));
        assert_eq!(half.add(&half), FieldElem::one());
    }

    #[test]
    fn equality_matches_cross_multiplication() {
        let samples = [
            FieldElem::w(),
            FieldElem::unlink(),
            FieldElem::w().add(&FieldElem::one()),
            FieldElem::w().mul(&FieldElem::unlink()),
            FieldElem::monomial(&[(Var::L, 2)], 1),
        ];
        for a in &samples {
            for b in &samples {
                let cross = a
                    .numerator()
                    .mul(b.denominator())
                    .sub(&b.numerator().mul(a.denominator()));
                assert_eq!(a == b, cross.is_zero());
            }
        }
    }

    #[test]
    fn bracket_matches_fraction_form() {
        // [k]_{l^2} = (1 - l^{2k})/(1 - l^2)
        let l2 = lp().pow(2);
        for k in 0..6u32 {
            let frac = FieldElem::new(
                MultiPoly::one().sub(&l2.pow(k)),
                MultiPoly::one().sub(&l2),
            )
            .unwrap();
            assert_eq!(FieldElem::from_poly(bracket(k as u64, &l2)), frac);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = FieldElem::w().add(&FieldElem::monomial(&[(Var::L, -3), (Var::S, 1)], 5));
        let order = [Var::L, Var::S];
        let json = f.to_json(&order).unwrap();
        let back = FieldElem::from_json(&json, &order).unwrap();
        assert_eq!(f, back);
    }
}
