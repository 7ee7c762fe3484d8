use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A polynomial variable. The derived order (l before s before t before the
/// y's) is the graded-lexicographic tiebreak order everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// The HOMFLY variable l.
    L,
    /// s = q^(1/2).
    S,
    /// u = t^(1/2), for Jones and Alexander output.
    T,
    /// F-polynomial variable y_i, indexed by poset label.
    Y(u32),
}

/// An exponent vector aligned to its owner's variable list. Ordered by
/// total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<i32>);

impl Mono {
    fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate Laurent polynomial with BigInt coefficients.
/// Canonical form: no zero coefficients, and no variable column whose
/// exponent is zero in every term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    fn canon(vars: Vec<Var>, mut terms: BTreeMap<Mono, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return MultiPoly { vars: Vec::new(), terms };
        }
        let used: Vec<bool> = (0..vars.len())
            .map(|j| terms.keys().any(|m| m.0[j] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, terms };
        }
        let kept: Vec<Var> = vars
            .iter()
            .zip(&used)
            .filter_map(|(&v, &u)| u.then_some(v))
            .collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| {
                let exps = m
                    .0
                    .iter()
                    .zip(&used)
                    .filter_map(|(&e, &u)| u.then_some(e))
                    .collect();
                (Mono(exps), c)
            })
            .collect();
        MultiPoly { vars: kept, terms }
    }

    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c: BigInt = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn variable(v: Var) -> Self {
        Self::monomial(&[(v, 1)], 1)
    }

    /// coef * prod v^e over the given (variable, exponent) pairs.
    pub fn monomial(pairs: &[(Var, i32)], coef: impl Into<BigInt>) -> Self {
        Self::from_sparse_terms(vec![(pairs.to_vec(), coef.into())])
    }

    /// Build from sparse (variable, exponent)-pair terms, merging duplicates.
    pub fn from_sparse_terms(sparse: Vec<(Vec<(Var, i32)>, BigInt)>) -> Self {
        let mut vars: Vec<Var> = sparse
            .iter()
            .flat_map(|(ps, _)| ps.iter().map(|&(v, _)| v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        let index = |v: Var| vars.binary_search(&v).unwrap();
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (pairs, coef) in sparse {
            let mut exps = vec![0i32; vars.len()];
            for (v, e) in pairs {
                exps[index(v)] += e;
            }
            *terms.entry(Mono(exps)).or_insert_with(BigInt::zero) += coef;
        }
        Self::canon(vars, terms)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        if !self.vars.is_empty() {
            return None;
        }
        match self.terms.len() {
            0 => None, // zero is handled by is_zero
            _ => self.terms.values().next(),
        }
    }

    /// The single (pairs, coef) term of a monomial, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(Vec<(Var, i32)>, &BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some((self.vars.iter().copied().zip(m.0.iter().copied()).collect(), c))
    }

    /// True when no exponent is negative.
    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    fn align(a: &MultiPoly, b: &MultiPoly) -> (Vec<Var>, Vec<usize>, Vec<usize>) {
        let mut vars: Vec<Var> = a.vars.iter().chain(b.vars.iter()).copied().collect();
        vars.sort_unstable();
        vars.dedup();
        let map = |vs: &[Var]| -> Vec<usize> {
            vs.iter().map(|v| vars.binary_search(v).unwrap()).collect()
        };
        let (ia, ib) = (map(&a.vars), map(&b.vars));
        (vars, ia, ib)
    }

    fn remap(m: &Mono, idx: &[usize], width: usize) -> Mono {
        let mut exps = vec![0i32; width];
        for (j, &e) in m.0.iter().enumerate() {
            exps[idx[j]] = e;
        }
        Mono(exps)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, ia, ib) = Self::align(self, other);
        let w = vars.len();
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            *terms.entry(Self::remap(m, &ia, w)).or_insert_with(BigInt::zero) += c;
        }
        for (m, c) in &other.terms {
            *terms.entry(Self::remap(m, &ib, w)).or_insert_with(BigInt::zero) += c;
        }
        Self::canon(vars, terms)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (vars, ia, ib) = Self::align(self, other);
        let w = vars.len();
        let left: Vec<(Mono, &BigInt)> =
            self.terms.iter().map(|(m, c)| (Self::remap(m, &ia, w), c)).collect();
        let right: Vec<(Mono, &BigInt)> =
            other.terms.iter().map(|(m, c)| (Self::remap(m, &ib, w), c)).collect();
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ma, ca) in &left {
            for (mb, cb) in &right {
                let exps: Vec<i32> =
                    ma.0.iter().zip(&mb.0).map(|(&x, &y)| x + y).collect();
                *terms.entry(Mono(exps)).or_insert_with(BigInt::zero) += *ca * *cb;
            }
        }
        Self::canon(vars, terms)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, pairs: &[(Var, i32)]) -> MultiPoly {
        self.mul(&Self::monomial(pairs, 1))
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Value with every variable set to 1 (the coefficient sum).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Factor into (monomial shift, shifted polynomial): the shift collects
    /// each variable's minimum exponent, so the remainder is ordinary with a
    /// zero minimum exponent per variable.
    pub fn split_monomial(&self) -> (Vec<(Var, i32)>, MultiPoly) {
        if self.is_zero() {
            return (Vec::new(), Self::zero());
        }
        let mut mins = vec![i32::MAX; self.vars.len()];
        for m in self.terms.keys() {
            for (j, &e) in m.0.iter().enumerate() {
                mins[j] = mins[j].min(e);
            }
        }
        if mins.iter().all(|&e| e == 0) {
            return (Vec::new(), self.clone());
        }
        let shift: Vec<(Var, i32)> = self
            .vars
            .iter()
            .zip(&mins)
            .filter_map(|(&v, &e)| (e != 0).then_some((v, e)))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps = m.0.iter().zip(&mins).map(|(&e, &lo)| e - lo).collect();
                (Mono(exps), c.clone())
            })
            .collect();
        (shift, Self::canon(self.vars.clone(), terms))
    }

    fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    fn normalize_sign(self) -> MultiPoly {
        if self.leading_coefficient().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Exact division of ordinary polynomials; None if the division does
    /// not come out evenly.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return self.div_scalar_exact(c);
        }
        let (vars, ia, ib) = Self::align(self, divisor);
        let w = vars.len();
        let mut rem: BTreeMap<Mono, BigInt> =
            self.terms.iter().map(|(m, c)| (Self::remap(m, &ia, w), c.clone())).collect();
        let div: Vec<(Mono, BigInt)> = divisor
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &ib, w), c.clone()))
            .collect();
        let (lead_m, lead_c) = div.last().unwrap();
        let mut quot: BTreeMap<Mono, BigInt> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let exps: Vec<i32> = m.0.iter().zip(&lead_m.0).map(|(&a, &b)| a - b).collect();
            if exps.iter().any(|&e| e < 0) {
                return None;
            }
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let qm = Mono(exps);
            for (dm, dc) in &div {
                let key = Mono(qm.0.iter().zip(&dm.0).map(|(&a, &b)| a + b).collect());
                let delta = &q * dc;
                let value = match rem.get(&key) {
                    Some(old) => old - delta,
                    None => -delta,
                };
                if value.is_zero() {
                    rem.remove(&key);
                } else {
                    rem.insert(key, value);
                }
            }
            quot.insert(qm, q);
        }
        Some(Self::canon(vars, quot))
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<MultiPoly> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(MultiPoly { vars: self.vars.clone(), terms })
    }

    fn degree_in(&self, j: usize) -> i32 {
        self.terms.keys().map(|m| m.0[j]).max().unwrap_or(0)
    }

    /// Split as a univariate polynomial in `v`: exponent -> coefficient
    /// polynomial in the remaining variables.
    fn univariate_in(&self, v: Var) -> BTreeMap<i32, MultiPoly> {
        let j = match self.vars.binary_search(&v) {
            Ok(j) => j,
            Err(_) => return BTreeMap::from([(0, self.clone())]),
        };
        let rest: Vec<Var> =
            self.vars.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
        let mut out: BTreeMap<i32, BTreeMap<Mono, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[j];
            let exps: Vec<i32> =
                m.0.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
            out.entry(e).or_default().insert(Mono(exps), c.clone());
        }
        out.into_iter().map(|(e, terms)| (e, Self::canon(rest.clone(), terms))).collect()
    }

    /// The gcd over the integers (content included), primitive-PRS based, with a
    /// nonnegative leading coefficient. Inputs must be ordinary.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        debug_assert!(a.is_ordinary() && b.is_ordinary());
        if a.is_zero() {
            return b.clone().normalize_sign();
        }
        if b.is_zero() {
            return a.clone().normalize_sign();
        }
        if let (Some(ca), Some(cb)) = (a.as_constant(), b.as_constant()) {
            return Self::constant(ca.gcd(cb));
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            return Self::gcd_with_monomial(a, b);
        }
        // prefer the variable with the lowest degree to shorten the PRS
        let v = *a
            .vars
            .iter()
            .chain(b.vars.iter())
            .min_by_key(|&&v| a.degree_in_var(v).max(b.degree_in_var(v)))
            .unwrap();

        let parts_a = a.univariate_in(v);
        let parts_b = b.univariate_in(v);
        let cont_a = Self::gcd_many(parts_a.values());
        let cont_b = Self::gcd_many(parts_b.values());
        let cont = Self::gcd(&cont_a, &cont_b);
        let mut f = a.exact_div(&cont_a).expect("content divides");
        let mut g = b.exact_div(&cont_b).expect("content divides");
        if f.degree_in_var(v) < g.degree_in_var(v) {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() && g.degree_in_var(v) > 0 {
            // a dividing remainder is the gcd of the primitive parts
            if f.exact_div(&g).is_some() {
                return cont.mul(&g.normalize_sign()).normalize_sign();
            }
            let r = Self::pseudo_rem(&f, &g, v);
            f = g;
            g = match r.is_zero() {
                true => r,
                false => {
                    let c = Self::gcd_many(r.univariate_in(v).values());
                    r.exact_div(&c).expect("content divides")
                }
            };
        }
        let pp_gcd = if g.is_zero() { f.normalize_sign() } else { Self::one() };
        cont.mul(&pp_gcd).normalize_sign()
    }

    /// Gcd when one side is a single term: the componentwise-minimum
    /// monomial times the gcd of all coefficients.
    fn gcd_with_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let (mono, single) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let coef = mono.content().gcd(&single.content());
        let (mpairs, _) = mono.as_monomial().expect("single term");
        let pairs: Vec<(Var, i32)> = mpairs
            .into_iter()
            .map(|(v, e)| {
                let other = match single.vars.binary_search(&v) {
                    Ok(j) => single.terms.keys().map(|m| m.0[j]).min().unwrap_or(0),
                    Err(_) => 0,
                };
                (v, e.min(other))
            })
            .collect();
        Self::monomial(&pairs, coef)
    }

    fn gcd_many<'a>(polys: impl Iterator<Item = &'a MultiPoly>) -> MultiPoly {
        let mut acc = Self::zero();
        for p in polys {
            acc = Self::gcd(&acc, p);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    fn degree_in_var(&self, v: Var) -> i32 {
        match self.vars.binary_search(&v) {
            Ok(j) => self.degree_in(j),
            Err(_) => 0,
        }
    }

    /// Pseudo-remainder of f by g with respect to v (deg_v f >= deg_v g).
    fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
        let dg = g.degree_in_var(v);
        let parts_g = g.univariate_in(v);
        let lc_g = parts_g.get(&dg).unwrap().clone();
        let mut r = f.clone();
        while !r.is_zero() {
            let dr = r.degree_in_var(v);
            if dr < dg {
                break;
            }
            let lc_r = r.univariate_in(v).remove(&dr).unwrap();
            r = r.mul(&lc_g).sub(&g.mul(&lc_r).mul_monomial(&[(v, dr - dg)]));
        }
        r
    }

    /// Render one variable-power factor, e.g. l^-3, q^(1/2), y4.
    fn factor_string(v: Var, e: i32) -> String {
        let half = |base: &str, e: i32| -> String {
            if e % 2 == 0 {
                match e / 2 {
                    1 => base.to_string(),
                    k => format!("{base}^{k}"),
                }
            } else {
                format!("{base}^({e}/2)")
            }
        };
        match v {
            Var::L => match e {
                1 => "l".to_string(),
                _ => format!("l^{e}"),
            },
            Var::S => half("q", e),
            Var::T => half("t", e),
            Var::Y(i) => match e {
                1 => format!("y{i}"),
                _ => format!("y{i}^{e}"),
            },
        }
    }

    fn term_string(&self, m: &Mono, c: &BigInt) -> (bool, String) {
        let negative = c.is_negative();
        let abs = c.abs();
        let factors: Vec<String> = self
            .vars
            .iter()
            .zip(&m.0)
            .filter(|&(_, &e)| e != 0)
            .map(|(&v, &e)| Self::factor_string(v, e))
            .collect();
        let body = if factors.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            factors.join("*")
        } else {
            format!("{abs}*{}", factors.join("*"))
        };
        (negative, body)
    }

    fn join_terms<'a>(&self, terms: impl Iterator<Item = (&'a Mono, &'a BigInt)>) -> String {
        let mut out = String::new();
        for (i, (m, c)) in terms.enumerate() {
            let (neg, body) = self.term_string(m, c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Canonical text: terms in decreasing graded-lexicographic order.
    pub fn display_string(&self) -> String {
        self.join_terms(self.terms.iter().rev())
    }

    /// F-polynomial text: terms in increasing total degree, then
    /// lexicographically by the sorted index lists of their variables.
    pub fn display_string_by_degree(&self) -> String {
        let mut keyed: Vec<(&Mono, &BigInt)> = self.terms.iter().collect();
        keyed.sort_by_cached_key(|(m, _)| {
            let idx: Vec<(Var, i32)> = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|&(_, &e)| e != 0)
                .map(|(&v, &e)| (v, e))
                .collect();
            (m.degree(), idx)
        });
        self.join_terms(keyed.into_iter())
    }

    /// JSON term list [[coef, e_1, .., e_k], ...] against a fixed variable
    /// order; coefficients that do not fit i64 are emitted as strings.
    pub fn json_terms(&self, order: &[Var]) -> Result<serde_json::Value> {
        for v in &self.vars {
            if !order.contains(v) {
                return Err(Error::Internal(format!("variable {v:?} not in the JSON schema")));
            }
        }
        let mut rows = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut row = Vec::with_capacity(order.len() + 1);
            row.push(match c.to_i64() {
                Some(n) => serde_json::Value::from(n),
                None => serde_json::Value::from(c.to_string()),
            });
            for &v in order {
                let e = match self.vars.binary_search(&v) {
                    Ok(j) => m.0[j],
                    Err(_) => 0,
                };
                row.push(serde_json::Value::from(e));
            }
            rows.push(serde_json::Value::from(row));
        }
        Ok(serde_json::Value::from(rows))
    }

    /// Parse the output of `json_terms` back against the same order.
    pub fn from_json_terms(value: &serde_json::Value, order: &[Var]) -> Result<MultiPoly> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of terms".into()))?;
        let mut sparse = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row
                .as_array()
                .filter(|cells| cells.len() == order.len() + 1)
                .ok_or_else(|| {
                    Error::Parse(format!("expected [coef, {} exponents]", order.len()))
                })?;
            let coef = match &cells[0] {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {n}"))),
                serde_json::Value::String(s) => {
                    s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {s}")))
                }
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            }?;
            let mut pairs = Vec::with_capacity(order.len());
            for (i, &v) in order.iter().enumerate() {
                let e = cells[i + 1]
                    .as_i64()
                    .and_then(|e| i32::try_from(e).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent {}", cells[i + 1])))?;
                pairs.push((v, e));
            }
            sparse.push((pairs, coef));
        }
        Ok(Self::from_sparse_terms(sparse))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_string())
    }
}

/// The geometric sum `[k]_x` = 1 + x + .. + x^(k-1); `[0]_x` = 0.
pub fn bracket(k: u64, x: &MultiPoly) -> MultiPoly {
    if let Some((pairs, coef)) = x.as_monomial() {
        // build the sum directly term by term
        let mut sparse = Vec::with_capacity(k as usize);
        let mut c = BigInt::one();
        for j in 0..k {
            let scaled: Vec<(Var, i32)> =
                pairs.iter().map(|&(v, e)| (v, e * j as i32)).collect();
            sparse.push((scaled, c.clone()));
            c *= coef;
        }
        return MultiPoly::from_sparse_terms(sparse);
    }
    let mut acc = MultiPoly::zero();
    let mut p = MultiPoly::one();
    for _ in 0..k {
        acc = acc.add(&p);
        p = p.mul(x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> MultiPoly {
        MultiPoly::variable(Var::L)
    }

    fn q() -> MultiPoly {
        MultiPoly::monomial(&[(Var::S, 2)], 1)
    }

    #[test]
    fn construction_and_equality() {
        // unused variable columns are trimmed, so values compare structurally
        let a = MultiPoly::monomial(&[(Var::L, 2), (Var::S, 0)], 3);
        let b = MultiPoly::monomial(&[(Var::L, 2)], 3);
        assert_eq!(a, b);
        assert_eq!(a.vars(), &[Var::L]);

        let z = l().sub(&l());
        assert!(z.is_zero());
        assert_eq!(z, MultiPoly::zero());
    }

    #[test]
    fn arithmetic_basics() {
        let p = l().add(&MultiPoly::one()); // l + 1
        let sq = p.mul(&p);
        assert_eq!(
            sq,
            MultiPoly::from_sparse_terms(vec![
                (vec![], BigInt::from(1)),
                (vec![(Var::L, 1)], BigInt::from(2)),
                (vec![(Var::L, 2)], BigInt::from(1)),
            ])
        );
        assert_eq!(p.pow(2), sq);
        assert_eq!(p.pow(0), MultiPoly::one());
        assert_eq!(sq.eval_at_one(), BigInt::from(4));
    }

    #[test]
    fn laurent_split() {
        let p = MultiPoly::monomial(&[(Var::S, -2)], 1).sub(&MultiPoly::one()); // s^-2 - 1
        let (shift, rest) = p.split_monomial();
        assert_eq!(shift, vec![(Var::S, -2)]);
        // s^-2 - 1 = s^-2 (1 - s^2)
        assert_eq!(rest, MultiPoly::one().sub(&q()));
    }

    #[test]
    fn exact_division() {
        let a = l().pow(2).sub(&MultiPoly::one()); // l^2 - 1
        let b = l().add(&MultiPoly::one()); // l + 1
        let c = l().sub(&MultiPoly::one()); // l - 1
        assert_eq!(a.exact_div(&b).unwrap(), c);
        assert_eq!(a.exact_div(&c).unwrap(), b);
        assert!(a.exact_div(&l()).is_none());
        assert!(b.exact_div(&MultiPoly::constant(2)).is_none());
        assert_eq!(a.mul_scalar(&BigInt::from(6)).div_scalar_exact(&BigInt::from(3)).unwrap(), a.mul_scalar(&BigInt::from(2)));
    }

    #[test]
    fn gcd_basics() {
        // gcd includes integer content
        let a = l().pow(2).sub(&MultiPoly::one()).mul_scalar(&BigInt::from(4));
        let b = l().add(&MultiPoly::one()).mul_scalar(&BigInt::from(6));
        let g = MultiPoly::gcd(&a, &b);
        assert_eq!(g, l().add(&MultiPoly::one()).mul_scalar(&BigInt::from(2)));

        // bivariate: (1 - l^2 q) is a common factor
        let f = MultiPoly::one().sub(&l().pow(2).mul(&q()));
        let a = f.mul(&l().add(&q()));
        let b = f.mul(&q().sub(&MultiPoly::constant(7)));
        let g = MultiPoly::gcd(&a, &b);
        // sign-normalized: leading coefficient positive
        assert_eq!(g, f.neg());
        assert_eq!(a.exact_div(&g).unwrap().mul(&g), a);
        assert_eq!(b.exact_div(&g).unwrap().mul(&g), b);
    }

    #[test]
    fn gcd_of_coprime() {
        let a = l().add(&MultiPoly::one());
        let b = q().sub(&MultiPoly::one());
        assert!(MultiPoly::gcd(&a, &b).is_one());
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket(0, &l()).is_zero());
        assert!(bracket(1, &l()).is_one());
        let l2 = l().pow(2);
        let b3 = bracket(3, &l2);
        assert_eq!(b3, MultiPoly::one().add(&l().pow(2)).add(&l().pow(4)));
        // (1 - x^k) = [k]_x (1 - x)
        let k = 5u32;
        let lhs = MultiPoly::one().sub(&l2.pow(k));
        assert_eq!(lhs, bracket(k as u64, &l2).mul(&MultiPoly::one().sub(&l2)));
    }

    #[test]
    fn display_strings() {
        let p = MultiPoly::from_sparse_terms(vec![
            (vec![], BigInt::from(1)),
            (vec![(Var::L, 2), (Var::S, 1)], BigInt::from(-3)),
            (vec![(Var::S, -2)], BigInt::from(1)),
        ]);
        assert_eq!(p.display_string(), "-3*l^2*q^(1/2) + 1 + q^-1");
        assert_eq!(MultiPoly::zero().display_string(), "0");
        assert_eq!(MultiPoly::constant(-7).display_string(), "-7");
        assert_eq!(MultiPoly::monomial(&[(Var::S, 3)], 1).display_string(), "q^(3/2)");
        assert_eq!(MultiPoly::monomial(&[(Var::T, -4)], 1).display_string(), "t^-2");
    }

    #[test]
    fn fpoly_display_order() {
        let p = MultiPoly::from_sparse_terms(vec![
            (vec![(Var::Y(1), 1), (Var::Y(2), 1), (Var::Y(3), 1)], BigInt::from(1)),
            (vec![(Var::Y(1), 1), (Var::Y(3), 1)], BigInt::from(1)),
            (vec![(Var::Y(3), 1)], BigInt::from(1)),
            (vec![(Var::Y(1), 1)], BigInt::from(1)),
            (vec![], BigInt::from(1)),
        ]);
        assert_eq!(p.display_string_by_degree(), "1 + y1 + y3 + y1*y3 + y1*y2*y3");
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::from_sparse_terms(vec![
            (vec![(Var::L, -1), (Var::S, 3)], BigInt::from(2)),
            (vec![], BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap()),
        ]);
        let order = [Var::L, Var::S];
        let json = p.json_terms(&order).unwrap();
        let back = MultiPoly::from_json_terms(&json, &order).unwrap();
        assert_eq!(p, back);
    }
}
