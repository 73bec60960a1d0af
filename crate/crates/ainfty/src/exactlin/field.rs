//! Exact scalar arithmetic: the ground field of the engine.
//!
//! Everything downstream is generic over [`Field`]. Two fields are provided:
//! arbitrary-precision rationals ([`Rat`], the default) and a prime field
//! ([`Fp64`]) whose modulus is chosen at workspace creation. No floating
//! point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Selects the ground field of a workspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    /// The rational numbers.
    Q,
    /// The prime field Z/p.
    Fp(u64),
}

impl FieldSpec {
    /// Reads the field choice from the `AINF_FIELD` environment variable.
    /// `Q` (or unset) selects the rationals, a prime number selects Z/p.
    pub fn from_env() -> Result<FieldSpec, String> {
        match std::env::var("AINF_FIELD") {
            Err(_) => Ok(FieldSpec::Q),
            Ok(s) => Self::parse(&s),
        }
    }

    pub fn parse(s: &str) -> Result<FieldSpec, String> {
        let s = s.trim();
        if s.is_empty() || s == "Q" || s == "q" {
            return Ok(FieldSpec::Q);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| format!("invalid field spec `{s}`: expected `Q` or a prime"))?;
        if !is_prime(p) {
            return Err(format!("invalid field spec `{s}`: {p} is not prime"));
        }
        Ok(FieldSpec::Fp(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. All operations are total except `inv` on zero.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Per-field parameters needed to mint elements (the modulus for Z/p).
    type Params: Clone + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Parse from the workspace text form ("p/q" for rationals, decimal for Z/p).
    fn parse(s: &str, params: &Self::Params) -> Result<Self, String>;
    /// Render in the workspace text form. `parse(render(x)) == x`.
    fn render(&self) -> String;
    /// The `FieldSpec` this element belongs to, when determined.
    fn spec(params: &Self::Params) -> FieldSpec;
}

/// Arbitrary-precision rational scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Field for Rat {
    type Params = ();

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rat(self.0.recip())
    }

    fn parse(s: &str, _params: &()) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            None => (s, "1"),
            Some((n, d)) => (n, d),
        };
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid rational `{s}`"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid rational `{s}`"))?;
        if den.is_zero() {
            return Err(format!("invalid rational `{s}`: zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    fn render(&self) -> String {
        if self.0.denom().is_one() {
            format!("{}", self.0.numer())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    fn spec(_params: &()) -> FieldSpec {
        FieldSpec::Q
    }
}

/// Element of a prime field Z/p with p < 2^31.
///
/// Elements minted from workspace data carry their modulus. Structural
/// constants (zeros and ones of identity blocks) are integer literals with
/// modulus 0; the modulus is resolved on first contact with a carried
/// element. Dividing an unresolved literal by anything other than ±1 is a
/// bug and panics.
#[derive(Clone, Copy, Eq)]
pub struct Fp64 {
    v: i64,
    m: u64,
}

impl Fp64 {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        Fp64 {
            v: v.rem_euclid(p as i64),
            m: p,
        }
    }

    fn canon(&self) -> (i64, u64) {
        if self.m == 0 {
            (self.v, 0)
        } else {
            (self.v.rem_euclid(self.m as i64), self.m)
        }
    }

    fn align(&self, other: &Self) -> (i64, i64, u64) {
        let m = match (self.m, other.m) {
            (0, m) | (m, 0) => m,
            (a, b) => {
                assert!(a == b, "mixed moduli {a} and {b}");
                a
            }
        };
        if m == 0 {
            (self.v, other.v, 0)
        } else {
            (
                self.v.rem_euclid(m as i64),
                other.v.rem_euclid(m as i64),
                m,
            )
        }
    }

    fn make(v: i64, m: u64) -> Self {
        if m == 0 {
            Fp64 { v, m }
        } else {
            Fp64 {
                v: v.rem_euclid(m as i64),
                m,
            }
        }
    }
}

impl PartialEq for Fp64 {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.align(other);
        a == b
    }
}

impl std::hash::Hash for Fp64 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Literal vs carried representations of the same residue are rare and
        // never keys; hash the canonical value only.
        self.canon().0.hash(state);
    }
}

impl fmt::Debug for Fp64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canon().0)
    }
}

impl fmt::Display for Fp64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canon().0)
    }
}

impl Field for Fp64 {
    type Params = u64;

    fn zero() -> Self {
        Fp64 { v: 0, m: 0 }
    }
    fn one() -> Self {
        Fp64 { v: 1, m: 0 }
    }
    fn from_i64(n: i64) -> Self {
        Fp64 { v: n, m: 0 }
    }
    fn is_zero(&self) -> bool {
        self.canon().0 == 0
    }
    fn is_one(&self) -> bool {
        if self.m == 0 {
            self.v == 1
        } else {
            self.canon().0 == 1
        }
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b, m) = self.align(other);
        Fp64::make(a.checked_add(b).expect("literal overflow"), m)
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b, m) = self.align(other);
        Fp64::make(a.checked_sub(b).expect("literal overflow"), m)
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.align(other);
        Fp64::make(a.checked_mul(b).expect("literal overflow"), m)
    }
    fn neg(&self) -> Self {
        Fp64::make(self.v.checked_neg().expect("literal overflow"), self.m)
    }
    fn inv(&self) -> Self {
        let (v, m) = self.canon();
        assert!(v != 0 || m != 0, "inverse of zero");
        if m == 0 {
            assert!(v == 1 || v == -1, "inverse of unresolved literal {v}");
            return *self;
        }
        // extended Euclid
        let (mut r0, mut r1) = (m as i64, v);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        assert!(r0 == 1, "inverse of zero");
        Fp64::make(t0, m)
    }

    fn parse(s: &str, p: &u64) -> Result<Self, String> {
        let s = s.trim();
        // accept p/q notation as well so fixtures can be shared across fields
        let (num, den) = match s.split_once('/') {
            None => (s, "1"),
            Some((n, d)) => (n, d),
        };
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid scalar `{s}`"))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid scalar `{s}`"))?;
        if den.rem_euclid(*p as i64) == 0 {
            return Err(format!("invalid scalar `{s}`: denominator is 0 mod {p}"));
        }
        Ok(Fp64::new(num, *p).div(&Fp64::new(den, *p)))
    }

    fn render(&self) -> String {
        format!("{}", self.canon().0)
    }

    fn spec(p: &u64) -> FieldSpec {
        FieldSpec::Fp(*p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_roundtrip_and_arith() {
        let a = Rat::parse("-3/4", &()).unwrap();
        let b = Rat::parse("1/2", &()).unwrap();
        assert_eq!(a.add(&b).render(), "-1/4");
        assert_eq!(a.mul(&b).render(), "-3/8");
        assert_eq!(a.inv().render(), "-4/3");
        assert_eq!(Rat::parse(&a.render(), &()).unwrap(), a);
        assert!(Rat::parse("1/0", &()).is_err());
    }

    #[test]
    fn fp_arith_and_literals() {
        let p = 7u64;
        let a = Fp64::parse("5", &p).unwrap();
        let b = Fp64::parse("1/2", &p).unwrap(); // 4 mod 7
        assert_eq!(b.render(), "4");
        assert_eq!(a.mul(&b).render(), "6");
        assert_eq!(a.inv().mul(&a), Fp64::one());
        // literals unify on contact
        let lit = Fp64::from_i64(12);
        assert_eq!(lit.add(&a).render(), "3");
        assert_eq!(Fp64::one().neg().add(&Fp64::one()), Fp64::zero());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Q);
        assert_eq!(FieldSpec::parse("13").unwrap(), FieldSpec::Fp(13));
        assert!(FieldSpec::parse("12").is_err());
    }
}
