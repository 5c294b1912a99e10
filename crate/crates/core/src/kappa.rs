//! Exact univariate polynomials and rational functions in `κ` over `ℚ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A polynomial in `κ`, coefficients lowest degree first, with no trailing
/// zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KappaPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl KappaPoly {
    pub fn zero() -> Self {
        KappaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `aκ + b`
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![q(b), q(a)])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        KappaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// `κ^d`
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        KappaPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &KappaPoly) -> (KappaPoly, KappaPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&d| d >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); top - dd + 1];
        for shift in (0..=top - dd).rev() {
            let c = &rem[shift + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * d;
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &KappaPoly) -> KappaPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Split as `content · primitive` where the primitive part has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::one(), Vec::new());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (BigRational::new(g, den_lcm), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Every coefficient a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Factor a nonzero polynomial into linear factors `(mκ + n)^e` with
    /// coprime integers `m > 0`, times a rational constant, using rational
    /// roots only. Anything left of positive degree is an error.
    pub fn linear_factors(&self) -> Result<(BigRational, Vec<LinearFactor>)> {
        let (content, mut prim) = self.primitive_part();
        if prim.is_empty() {
            return Err(Error::Internal("factoring the zero polynomial".into()));
        }
        let mut factors: Vec<LinearFactor> = Vec::new();
        while prim.len() > 1 {
            let Some((m, n)) = find_rational_root(&prim)? else {
                return Err(Error::NonLinearResidue(Self::from_bigints(&prim).to_string()));
            };
            prim = divide_linear(&prim, &m, &n);
            match factors.iter_mut().find(|f| f.m == m && f.n == n) {
                Some(f) => f.multiplicity += 1,
                None => factors.push(LinearFactor {
                    m,
                    n,
                    multiplicity: 1,
                }),
            }
        }
        let constant = content * BigRational::from_integer(prim[0].clone());
        factors.sort_by(|a, b| (&a.m, &a.n).cmp(&(&b.m, &b.n)));
        Ok((constant, factors))
    }
}

/// `(mκ + n)^multiplicity`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub m: BigInt,
    pub n: BigInt,
    pub multiplicity: usize,
}

fn divisors(value: &BigInt) -> Result<Vec<u128>> {
    let v = value
        .abs()
        .to_u128()
        .ok_or_else(|| Error::TooLarge(format!("trial division of {value}")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn eval_int(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // den^deg · f(num/den), exact in integers
    let deg = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::one();
    let mut den_pows = vec![BigInt::one(); deg + 1];
    for i in 1..=deg {
        den_pows[i] = &den_pows[i - 1] * den;
    }
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * &num_pow * &den_pows[deg - i];
        num_pow *= num;
    }
    acc
}

/// A factor `mκ + n` of an integer polynomial, if one exists.
fn find_rational_root(coeffs: &[BigInt]) -> Result<Option<(BigInt, BigInt)>> {
    if coeffs[0].is_zero() {
        return Ok(Some((BigInt::one(), BigInt::zero())));
    }
    let lead = coeffs.last().expect("nonempty");
    let ps = divisors(&coeffs[0])?;
    let qs = divisors(lead)?;
    for qd in &qs {
        for pd in &ps {
            let (p, qq) = (BigInt::from(*pd), BigInt::from(*qd));
            if !p.gcd(&qq).is_one() {
                continue;
            }
            // negative roots first: these are the expected poles
            for num in [-p.clone(), p.clone()] {
                if eval_int(coeffs, &num, &qq).is_zero() {
                    // root num/qq ↔ factor qq·κ − num
                    return Ok(Some((qq.clone(), -num)));
                }
            }
        }
    }
    Ok(None)
}

/// Exact quotient of `coeffs` by `mκ + n`.
fn divide_linear(coeffs: &[BigInt], m: &BigInt, n: &BigInt) -> Vec<BigInt> {
    let poly = KappaPoly::from_bigints(coeffs);
    let lin = KappaPoly::from_bigints(&[n.clone(), m.clone()]);
    let (quot, rem) = poly.div_rem(&lin);
    debug_assert!(rem.is_zero());
    let (content, prim) = quot.primitive_part();
    prim.into_iter()
        .map(|c| (BigRational::from_integer(c) * &content).to_integer())
        .collect()
}

impl Add for &KappaPoly {
    type Output = KappaPoly;
    fn add(self, rhs: &KappaPoly) -> KappaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        KappaPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &KappaPoly {
    type Output = KappaPoly;
    fn sub(self, rhs: &KappaPoly) -> KappaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        KappaPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: &KappaPoly) -> KappaPoly {
        if self.is_zero() || rhs.is_zero() {
            return KappaPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KappaPoly::from_coeffs(out)
    }
}

impl Neg for &KappaPoly {
    type Output = KappaPoly;
    fn neg(self) -> KappaPoly {
        KappaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "κ")?,
                (1, false) => write!(f, "{mag}κ")?,
                (_, true) => write!(f, "κ^{d}")?,
                (_, false) => write!(f, "{mag}κ^{d}")?,
            }
        }
        Ok(())
    }
}

/// A reduced rational function `numerator / denominator` in `κ`.
///
/// The denominator is primitive with integer coefficients and a positive
/// leading coefficient; the numerator carries any rational content.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KappaRational {
    numerator: KappaPoly,
    denominator: KappaPoly,
}

impl KappaRational {
    pub fn new(numerator: KappaPoly, denominator: KappaPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Internal("zero denominator".into()));
        }
        Ok(Self::normalized(numerator, denominator))
    }

    fn normalized(numerator: KappaPoly, denominator: KappaPoly) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        let g = numerator.gcd(&denominator);
        let (num, den) = if g.is_constant() {
            (numerator, denominator)
        } else {
            (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
        };
        let (content, prim) = den.primitive_part();
        KappaRational {
            numerator: num.scale(&content.recip()),
            denominator: KappaPoly::from_bigints(&prim),
        }
    }

    pub fn zero() -> Self {
        KappaRational {
            numerator: KappaPoly::zero(),
            denominator: KappaPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(KappaPoly::one())
    }

    pub fn from_poly(p: KappaPoly) -> Self {
        KappaRational {
            numerator: p,
            denominator: KappaPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(KappaPoly::from_ints(&[n]))
    }

    pub fn numerator(&self) -> &KappaPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &KappaPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn div(&self, rhs: &KappaRational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Multiply by a polynomial without forming a full fraction first.
    pub fn mul_poly(&self, p: &KappaPoly) -> Self {
        Self::normalized(&self.numerator * p, self.denominator.clone())
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.denominator.eval(at);
        (!d.is_zero()).then(|| self.numerator.eval(at) / d)
    }
}

impl Add for &KappaRational {
    type Output = KappaRational;
    fn add(self, rhs: &KappaRational) -> KappaRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denominator == rhs.denominator {
            return KappaRational::normalized(
                &self.numerator + &rhs.numerator,
                self.denominator.clone(),
            );
        }
        KappaRational::normalized(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Neg for &KappaRational {
    type Output = KappaRational;
    fn neg(self) -> KappaRational {
        KappaRational {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl Sub for &KappaRational {
    type Output = KappaRational;
    fn sub(self, rhs: &KappaRational) -> KappaRational {
        self + &(-rhs)
    }
}

impl Mul for &KappaRational {
    type Output = KappaRational;
    fn mul(self, rhs: &KappaRational) -> KappaRational {
        if self.is_zero() || rhs.is_zero() {
            return KappaRational::zero();
        }
        KappaRational::normalized(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl fmt::Display for KappaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            // primitive constant denominator is 1
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}
