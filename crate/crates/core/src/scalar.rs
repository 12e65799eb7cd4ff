//! Exact scalar types.
//!
//! `Q` is used wherever entries are rational (generators, oracle blocks).
//! `Amplitude` covers everything else: Gaussian rationals extended by square
//! roots of positive integers, enough for `√½`, ladder operators and
//! spin-½ coupling coefficients while keeping equality decidable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;
pub type Gauss = Complex<Q>;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// Ring with multiplicative inverses of non-zero elements.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for Q {
    fn from_i64(n: i64) -> Self {
        Q::from_integer(n as i128)
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

/// Formats a rational as `a/b` (denominator always present).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `a/b` or a bare integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i128 = a.trim().parse().ok()?;
            let b: i128 = b.trim().parse().ok()?;
            if b == 0 {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<i128>().ok().map(Q::from_integer),
    }
}

/// Splits `n` as `f² · r` with `r` squarefree.
pub fn squarefree_split(mut n: u128) -> (u128, u128) {
    assert!(n > 0, "squarefree_split of zero");
    let mut f = 1u128;
    let mut r = 1u128;
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    r *= n;
    (f, r)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Element of ℚ(i)(√2, √3, √5, …), stored as Σ c_r √r over squarefree
/// radicands r ≥ 1 with Gaussian rational coefficients.
///
/// Terms are kept sorted by radicand with no zero coefficients, so the
/// derived equality is exact equality of field elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Amplitude {
    terms: Vec<(u64, Gauss)>,
}

impl Amplitude {
    pub fn from_gauss(c: Gauss) -> Self {
        if c.is_zero() {
            Self::default()
        } else {
            Amplitude { terms: vec![(1, c)] }
        }
    }

    pub fn rational(x: Q) -> Self {
        Self::from_gauss(Gauss::new(x, Q::zero()))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Q::from_integer(n as i128))
    }

    pub fn complex(re: Q, im: Q) -> Self {
        Self::from_gauss(Gauss::new(re, im))
    }

    pub fn i() -> Self {
        Self::complex(Q::zero(), Q::one())
    }

    /// i^n for any integer n.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    /// √x for a non-negative rational x.
    pub fn sqrt_of(x: Q) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        if x.is_zero() {
            return Self::default();
        }
        // √(a/b) = √(ab)/b
        let a = *x.numer() as u128;
        let b = *x.denom() as u128;
        let (f, r) = squarefree_split(a * b);
        let coeff = Q::new(f as i128, b as i128);
        Amplitude {
            terms: vec![(r as u64, Gauss::new(coeff, Q::zero()))],
        }
    }

    pub fn sqrt_half() -> Self {
        Self::sqrt_of(q(1, 2))
    }

    pub fn terms(&self) -> &[(u64, Gauss)] {
        &self.terms
    }

    /// The value as a Gaussian rational if no radicals remain.
    pub fn as_gauss(&self) -> Option<Gauss> {
        match self.terms.as_slice() {
            [] => Some(Gauss::zero()),
            [(1, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.as_gauss().filter(|c| c.im.is_zero()).map(|c| c.re)
    }

    /// Integer value, if the element is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|x| x.is_integer())
            .map(|x| x.to_integer() as i64)
    }

    pub fn conj(&self) -> Self {
        Amplitude {
            terms: self.terms.iter().map(|(r, c)| (*r, c.conj())).collect(),
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, c) in &self.terms {
            let s = (*r as f64).sqrt();
            re += s * ratio_f64(&c.re);
            im += s * ratio_f64(&c.im);
        }
        (re, im)
    }

    fn from_map(map: BTreeMap<u64, Gauss>) -> Self {
        Amplitude {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Galois conjugate flipping the sign of every √r with p | r.
    fn flip_prime(&self, p: u64) -> Self {
        Amplitude {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| if r % p == 0 { (*r, -c) } else { (*r, *c) })
                .collect(),
        }
    }
}

fn ratio_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (r, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let body = match (c.re.is_zero(), c.im.is_zero()) {
                (false, true) => format!("{}", c.re),
                (true, false) => format!("{}i", c.im),
                _ => format!("({}{:+}i)", c.re, c.im),
            };
            if *r == 1 {
                write!(f, "{}", body)?;
            } else {
                write!(f, "{}·√{}", body, r)?;
            }
        }
        Ok(())
    }
}

impl Zero for Amplitude {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Amplitude {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Add for Amplitude {
    type Output = Amplitude;
    fn add(self, rhs: Amplitude) -> Amplitude {
        if rhs.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return rhs;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut a, mut b) = (self.terms.into_iter().peekable(), rhs.terms.into_iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap());
                    } else if y.0 < x.0 {
                        out.push(b.next().unwrap());
                    } else {
                        let (r, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let c = c1 + c2;
                        if !c.is_zero() {
                            out.push((r, c));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Amplitude { terms: out }
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        Amplitude {
            terms: self.terms.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}

impl Sub for Amplitude {
    type Output = Amplitude;
    fn sub(self, rhs: Amplitude) -> Amplitude {
        self + (-rhs)
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Amplitude) -> Amplitude {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Amplitude::default();
        }
        if let ([(1, a)], [(r, b)]) | ([(r, b)], [(1, a)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            let c = a * b;
            return if c.is_zero() {
                Amplitude::default()
            } else {
                Amplitude { terms: vec![(*r, c)] }
            };
        }
        let mut map: BTreeMap<u64, Gauss> = BTreeMap::new();
        for (r, a) in &self.terms {
            for (s, b) in &rhs.terms {
                let g = r.gcd(s);
                let rad = (r / g) * (s / g);
                let c = a * b * Q::from_integer(g as i128);
                let e = map.entry(rad).or_insert_with(Gauss::zero);
                *e = *e + c;
            }
        }
        Amplitude::from_map(map)
    }
}

impl Ring for Amplitude {
    fn from_i64(n: i64) -> Self {
        Amplitude::integer(n)
    }
}

impl Field for Amplitude {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut primes: Vec<u64> = self
            .terms
            .iter()
            .flat_map(|(r, _)| prime_factors(*r))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        // Multiply by conjugates until the radicals cancel.
        let mut y = self.clone();
        let mut acc = Amplitude::one();
        for p in primes {
            let c = y.flip_prime(p);
            acc = acc * c.clone();
            y = y * c;
        }
        let g = y.as_gauss().expect("norm is a Gaussian rational");
        let n = g.norm_sqr();
        let ginv = Gauss::new(g.re / n, -g.im / n);
        Some(acc * Amplitude::from_gauss(ginv))
    }
}

impl From<Q> for Amplitude {
    fn from(x: Q) -> Self {
        Amplitude::rational(x)
    }
}

impl From<i64> for Amplitude {
    fn from(n: i64) -> Self {
        Amplitude::integer(n)
    }
}
