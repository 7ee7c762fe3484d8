//! Extended rationals and continued fractions.
//!
//! A fraction p/q is kept coprime with p >= 0 and the sign carried by q;
//! 1/0 is the point at infinity. Continued fractions are integer term lists
//! [c1,..,cn] with the two degenerate conventions [] = infinity (n = 0) and a
//! distinct marker for the n = -1 list, which evaluates to 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Cap on the number of terms an expansion may produce before giving up.
/// Expansions of p/q never exceed |q| + 1 terms, so this only triggers on
/// astronomically large inputs.
pub const MAX_EXPANSION_TERMS: usize = 10_000_000;

/// A reduced fraction p/q with p >= 0; (1, 0) is infinity, (0, 1) is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    p: BigInt,
    q: BigInt,
}

impl ExtendedRational {
    /// Build from raw parts, requiring them to be coprime already.
    /// The sign is normalized into q; `p = q = 0` and `gcd != 1` are rejected.
    pub fn from_coprime(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let p: BigInt = p.into();
        let q: BigInt = q.into();
        let g = p.gcd(&q);
        if !g.is_one() {
            return Err(Error::NotCoprime(p.to_string(), q.to_string()));
        }
        Ok(Self::normalized(p, q))
    }

    /// Build from raw parts, reducing by the gcd. Only `p = q = 0` is invalid.
    pub fn reduced(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let p: BigInt = p.into();
        let q: BigInt = q.into();
        let g = p.gcd(&q);
        if g.is_zero() {
            return Err(Error::Domain("0/0 is not a fraction".into()));
        }
        Ok(Self::normalized(p / &g, q / &g))
    }

    fn normalized(mut p: BigInt, mut q: BigInt) -> Self {
        if p.is_negative() {
            p = -p;
            q = -q;
        }
        if p.is_zero() {
            q = BigInt::from(1); // 0/-1 and 0/1 are the same rational
        }
        ExtendedRational { p, q }
    }

    pub fn infinity() -> Self {
        ExtendedRational { p: BigInt::from(1), q: BigInt::from(0) }
    }

    pub fn zero() -> Self {
        ExtendedRational { p: BigInt::from(0), q: BigInt::from(1) }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::normalized(n.into(), BigInt::from(1))
    }

    pub fn numerator(&self) -> &BigInt {
        &self.p
    }

    pub fn denominator(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// True when the value is a finite rational >= 1 (infinity excluded).
    pub fn at_least_one(&self) -> bool {
        self.q.is_positive() && self.p >= self.q
    }

    /// True when |p/q| >= 1 (infinity excluded).
    pub fn abs_at_least_one(&self) -> bool {
        !self.q.is_zero() && self.p >= self.q.abs()
    }

    /// The map p/q -> p/(q - sgn(q) p). Undefined on infinity.
    pub fn involution(&self) -> Result<Self> {
        if self.q.is_zero() {
            return Err(Error::Domain("involution is undefined at infinity".into()));
        }
        let q = &self.q - self.q.signum() * &self.p;
        // gcd(p, q - sgn(q) p) = gcd(p, q) = 1, so no reduction is needed
        Ok(Self::normalized(self.p.clone(), q))
    }

    /// Parse `[-]?digits "/" [-]?digits` or a bare integer. Non-coprime
    /// input is rejected rather than silently reduced.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid integer `{t}`")))
        };
        match s.split_once('/') {
            Some((a, b)) => Self::from_coprime(parse_int(a)?, parse_int(b)?),
            None => Ok(Self::from_integer(parse_int(s)?)),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A continued fraction [c1,..,cn]. `None` terms encode the degenerate
/// n = -1 list, which evaluates to 0; the empty list evaluates to infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Option<Vec<i64>>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Self {
        ContinuedFraction { terms: Some(terms) }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    /// The degenerate n = -1 list.
    pub fn degenerate() -> Self {
        ContinuedFraction { terms: None }
    }

    pub fn is_degenerate(&self) -> bool {
        self.terms.is_none()
    }

    /// Terms of a non-degenerate list; empty for both [] and the marker.
    pub fn terms(&self) -> &[i64] {
        self.terms.as_deref().unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.terms().len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms().is_empty()
    }

    /// Right-to-left exact evaluation, with x + infinity = infinity absorbed.
    pub fn eval(&self) -> ExtendedRational {
        let Some(terms) = &self.terms else {
            return ExtendedRational::zero();
        };
        // acc = p/q starting at infinity; prepending c maps p/q to (c p + q)/p
        let mut p = BigInt::from(1);
        let mut q = BigInt::from(0);
        for &c in terms.iter().rev() {
            let new_p = BigInt::from(c) * &p + &q;
            q = std::mem::replace(&mut p, new_p);
        }
        ExtendedRational::reduced(p, q).expect("continued fractions never evaluate to 0/0")
    }

    /// Partial sums l_0..l_n with l_i = l_{i-1} + |c_i|.
    pub fn partial_sums(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(0u64);
        for &c in self.terms() {
            out.push(out.last().unwrap() + c.unsigned_abs());
        }
        out
    }

    /// Type sequence t_0..t_n with t_0 = -1 and t_i = (-1)^(i-1) sgn(c_i).
    pub fn type_sequence(&self) -> Vec<i8> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(-1i8);
        for (i, &c) in self.terms().iter().enumerate() {
            let parity = if i % 2 == 0 { 1 } else { -1 };
            out.push(parity * c.signum() as i8);
        }
        out
    }

    /// The sign sequence: t_i repeated |c_i| times, for i = 1..n.
    pub fn sign_sequence(&self) -> Vec<i8> {
        let types = self.type_sequence();
        let mut out = Vec::new();
        for (i, &c) in self.terms().iter().enumerate() {
            for _ in 0..c.unsigned_abs() {
                out.push(types[i + 1]);
            }
        }
        out
    }

    /// The sign sequence with its first and last entries removed; defined
    /// only when l_n >= 2.
    pub fn inner_sign_sequence(&self) -> Option<Vec<i8>> {
        let s = self.sign_sequence();
        if s.len() < 2 {
            return None;
        }
        Some(s[1..s.len() - 1].to_vec())
    }

    /// Every term strictly positive.
    pub fn is_positive(&self) -> bool {
        self.terms().iter().all(|&c| c > 0)
    }

    /// Every term even and nonzero.
    pub fn is_even(&self) -> bool {
        self.terms().iter().all(|&c| c != 0 && c % 2 == 0)
    }

    /// Conditions of the labeled path-poset construction: every |c_i| >= 1,
    /// and t_i = t_{i+1} forces |c_i|, |c_{i+1}| > 1.
    pub fn is_poset_valid(&self) -> bool {
        if self.is_degenerate() {
            return false;
        }
        let terms = self.terms();
        if terms.contains(&0) {
            return false;
        }
        let types = self.type_sequence();
        for i in 1..terms.len() {
            if types[i] == types[i + 1]
                && (terms[i - 1].unsigned_abs() == 1 || terms[i].unsigned_abs() == 1)
            {
                return false;
            }
        }
        true
    }

    /// Parse a comma-separated term list, with optional surrounding brackets.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let terms = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid continued-fraction term `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(terms))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.terms {
            None => write!(f, "(degenerate)"),
            Some(ts) => {
                write!(f, "[")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn term_to_i64(b: &BigInt) -> Result<i64> {
    b.to_i64()
        .ok_or_else(|| Error::ResourceLimit(format!("continued-fraction term {b} exceeds i64")))
}

/// Euclidean floor expansion of r >= 1 (or infinity -> []). The final term
/// is >= 2 whenever l_n >= 2, which is the canonical form of the expansion.
pub fn positive_cf(r: &ExtendedRational) -> Result<ContinuedFraction> {
    if r.is_infinity() {
        return Ok(ContinuedFraction::empty());
    }
    if !r.at_least_one() {
        return Err(Error::Domain(format!("{r} < 1 has no positive expansion")));
    }
    let mut p = r.numerator().clone();
    let mut q = r.denominator().clone();
    let mut terms = Vec::new();
    while !q.is_zero() {
        if terms.len() >= MAX_EXPANSION_TERMS {
            return Err(Error::ResourceLimit("positive expansion too long".into()));
        }
        let (a, rem) = p.div_mod_floor(&q);
        terms.push(term_to_i64(&a)?);
        p = std::mem::replace(&mut q, rem);
    }
    Ok(ContinuedFraction::new(terms))
}

/// The unique even expansion of r (Euclidean with nearest-even quotients).
/// Exists iff |r| >= 1 and p or q is even, or r is infinity.
pub fn even_cf(r: &ExtendedRational) -> Result<ContinuedFraction> {
    if r.is_infinity() {
        return Ok(ContinuedFraction::empty());
    }
    if !r.abs_at_least_one() {
        return Err(Error::Domain(format!("|{r}| < 1 has no even expansion")));
    }
    if r.numerator().is_odd() && r.denominator().is_odd() {
        return Err(Error::NoEvenExpansion);
    }
    // x = p/q with q > 0; each step replaces x by 1/(x - b) for the even b
    // nearest to x. x is never an odd integer here, so no ties arise.
    let mut p = r.numerator() * r.denominator().signum();
    let mut q = r.denominator().abs();
    let mut terms = Vec::new();
    loop {
        if terms.len() >= MAX_EXPANSION_TERMS {
            return Err(Error::ResourceLimit("even expansion too long".into()));
        }
        let two_q = 2 * &q;
        let lo = 2 * p.div_floor(&two_q); // greatest even integer <= x
        // nearest of lo, lo + 2: compare x with the odd midpoint lo + 1
        let b = if p > (&lo + 1) * &q { &lo + 2 } else { lo };
        terms.push(term_to_i64(&b)?);
        let rem = &p - &b * &q; // x - b = rem/q, with |rem| < q
        if rem.is_zero() {
            break;
        }
        if rem.abs() >= q.abs() {
            return Err(Error::Internal(format!(
                "even expansion of {r} failed to shrink its denominator"
            )));
        }
        // 1/(x - b) = q/rem, normalized to a positive denominator
        let sign = rem.signum();
        p = &q * &sign;
        q = rem * sign;
    }
    let cf = ContinuedFraction::new(terms);
    if &cf.eval() != r {
        return Err(Error::Internal(format!("even expansion of {r} failed verification")));
    }
    Ok(cf)
}

/// The canonical form of the link C(r): a marker for p <= 1, otherwise the
/// even expansion of an isotopic representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CanonicalLink {
    Unknot,
    TwoUnlink,
    Even(ContinuedFraction),
}

/// Canonicalize to an even expansion of an isotopic representative.
///
/// For odd p (a knot) q is reduced mod p into (0, p), then shifted by -p if
/// both are odd; orientation is immaterial for knots. For even p (a
/// two-component link) q is reduced mod 2p into (-p, p): reducing only mod
/// p can land on the representative whose canonical orientation reverses
/// one component, which changes the HOMFLY polynomial outright (already
/// C(4/-1) vs C(4/3), the antiparallel vs parallel (2,4) torus link). The
/// mod-2p reduction keeps the canonical orientation class and is the
/// identity on every fraction an even expansion evaluates to.
pub fn canonical_link_form(r: &ExtendedRational) -> Result<CanonicalLink> {
    let p = r.numerator();
    if p.is_zero() {
        return Ok(CanonicalLink::TwoUnlink);
    }
    if *p == BigInt::from(1) {
        return Ok(CanonicalLink::Unknot);
    }
    let q = if p.is_odd() {
        let mut q = r.denominator().mod_floor(p);
        if q.is_odd() {
            q -= p;
        }
        q
    } else {
        let two_p = 2 * p;
        let mut q = r.denominator().mod_floor(&two_p);
        if q >= *p {
            q -= two_p;
        }
        q
    };
    let reduced = ExtendedRational::from_coprime(p.clone(), q)?;
    Ok(CanonicalLink::Even(even_cf(&reduced)?))
}

/// C(p/q) and C(p'/q') are isotopic iff p = p' and q' = q or q q' = 1 mod p.
pub fn link_isotopic(r1: &ExtendedRational, r2: &ExtendedRational) -> bool {
    if r1.numerator() != r2.numerator() {
        return false;
    }
    let p = r1.numerator();
    if p.is_zero() {
        return r1.denominator() == r2.denominator();
    }
    let q1 = r1.denominator().mod_floor(p);
    let q2 = r2.denominator().mod_floor(p);
    q1 == q2 || (&q1 * &q2).mod_floor(p) == BigInt::from(1).mod_floor(p)
}

/// Isotopy of canonically oriented rational links: for knots (p odd) this
/// is plain isotopy, but for two-component links the congruences tighten to
/// q' = q or q q' = 1 mod 2p, since reversing one component is an
/// unoriented isotopy that changes the oriented link type (and with it the
/// HOMFLY polynomial).
pub fn oriented_link_isotopic(r1: &ExtendedRational, r2: &ExtendedRational) -> bool {
    if !link_isotopic(r1, r2) {
        return false;
    }
    let p = r1.numerator();
    if p.is_odd() || p.is_zero() {
        return true;
    }
    let two_p = 2 * p;
    let q1 = r1.denominator().mod_floor(&two_p);
    let q2 = r2.denominator().mod_floor(&two_p);
    q1 == q2 || (&q1 * &q2).mod_floor(&two_p) == BigInt::from(1)
}
