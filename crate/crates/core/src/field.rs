//! Exact arithmetic in cyclotomic fields `Q(zeta_L)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(deg-1)` modulo the
//! cyclotomic polynomial `Phi_L`, so two elements of the same level are equal iff
//! their coordinates agree. Levels are always multiples of 4, which guarantees
//! `i = zeta_L^(L/4)` is available. Binary operations on different levels lift
//! both operands to the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Canonical field level for a requested level: `lcm(4, level)`.
pub fn normalize_level(level: u64) -> u64 {
    assert!(level >= 1, "field level must be positive");
    lcm(4, level)
}

pub(crate) struct LevelData {
    level: u64,
    degree: usize,
    phi: Vec<BigInt>,
    /// Sparse reduced form of `zeta^j` for `0 <= j < level`.
    powers: Vec<Vec<(usize, Rational)>>,
}

fn cyclotomic_poly(n: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d, cache);
            num = divide_monic(&num, &div);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

impl LevelData {
    fn build(level: u64) -> LevelData {
        let mut cache = HashMap::new();
        let phi = cyclotomic_poly(level, &mut cache);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur: Vec<BigInt> = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..level {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, Rational::from_integer(c.clone())))
                    .collect(),
            );
            // multiply by x and reduce the overflow coefficient with Phi (monic)
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi[i];
                }
            }
        }
        LevelData {
            level,
            degree,
            phi,
            powers,
        }
    }
}

fn level_data(level: u64) -> Arc<LevelData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<LevelData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("level cache poisoned");
    guard
        .entry(level)
        .or_insert_with(|| Arc::new(LevelData::build(level)))
        .clone()
}

/// The coefficients of `Phi_L`, lowest degree first.
pub fn cyclotomic_polynomial(level: u64) -> Vec<BigInt> {
    let mut cache = HashMap::new();
    cyclotomic_poly(level, &mut cache)
}

/// Element of `Q(zeta_L)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    data: Arc<LevelData>,
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(level: u64) -> Self {
        let data = level_data(normalize_level(level));
        let coords = vec![Rational::zero(); data.degree];
        CyclotomicNumber { data, coords }
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(Rational::one(), level)
    }

    pub fn from_rational(q: Rational, level: u64) -> Self {
        let mut z = Self::zero(level);
        z.coords[0] = q;
        z
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)), 4)
    }

    /// Builds an element from power-basis coordinates at the given level.
    pub fn from_coords(level: u64, coords: Vec<Rational>) -> Result<Self> {
        if level % 4 != 0 {
            return Err(Error::InvalidInput(format!(
                "field level {level} is not a multiple of 4"
            )));
        }
        let data = level_data(level);
        if coords.len() != data.degree {
            return Err(Error::InvalidInput(format!(
                "level {level} needs {} coordinates, got {}",
                data.degree,
                coords.len()
            )));
        }
        Ok(CyclotomicNumber { data, coords })
    }

    /// The root of unity `exp(2 pi i k / n)`, at level `lcm(4, n)`.
    pub fn zeta_power(n: u64, k: i64) -> Self {
        let level = normalize_level(n);
        let data = level_data(level);
        let step = (level / n) as i64;
        let e = (k * step).rem_euclid(level as i64) as usize;
        let mut coords = vec![Rational::zero(); data.degree];
        for (i, c) in &data.powers[e] {
            coords[*i] = c.clone();
        }
        CyclotomicNumber { data, coords }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::zeta_power(4, 1)
    }

    pub fn level(&self) -> u64 {
        self.data.level
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Embeds the element into `Q(zeta_M)`; requires `level | M`.
    pub fn lift(&self, target: u64) -> Result<Self> {
        let from = self.level();
        if target % from != 0 || target % 4 != 0 {
            return Err(Error::LevelMismatch { from, to: target });
        }
        if target == from {
            return Ok(self.clone());
        }
        let data = level_data(target);
        let step = (target / from) as usize;
        let mut coords = vec![Rational::zero(); data.degree];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in &data.powers[j * step] {
                coords[*i] += c * p;
            }
        }
        Ok(CyclotomicNumber { data, coords })
    }

    fn lift_pair<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.level() == b.level() {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = lcm(a.level(), b.level());
        let la = if a.level() == l {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.lift(l).expect("lcm lift"))
        };
        let lb = if b.level() == l {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.lift(l).expect("lcm lift"))
        };
        (la, lb)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber {
            data: self.data.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let l = self.data.level as usize;
        let mut coords = vec![Rational::zero(); self.data.degree];
        coords[0] = self.coords[0].clone();
        for (j, c) in self.coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in &self.data.powers[l - j] {
                coords[*i] += c * p;
            }
        }
        CyclotomicNumber {
            data: self.data.clone(),
            coords,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_L`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.coords[0].recip(), self.level()));
        }
        let phi: Vec<Rational> = self
            .data
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a = poly::trim(self.coords.clone());
        // invariant: s_i * a == r_i (mod phi)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly::div_rem(&r0, &r1);
            let s2 = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            debug_assert!(!r1.is_empty(), "Phi_L is irreducible");
        }
        let c = r1[0].recip();
        let s = poly::scale(&s1, &c);
        let (_, s) = poly::div_rem(
            &s,
            &self
                .data
                .phi
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect::<Vec<_>>(),
        );
        let mut coords = vec![Rational::zero(); self.data.degree];
        for (i, c) in s.into_iter().enumerate() {
            coords[i] = c;
        }
        Ok(CyclotomicNumber {
            data: self.data.clone(),
            coords,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Real part with respect to complex conjugation: `(x + conj x) / 2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(&rat(1, 2))
    }

    /// Imaginary part: `(x - conj x) / (2i)`.
    pub fn imag_part(&self) -> Self {
        let d = self - &self.conj();
        (&d * &Self::i()).scale(&rat(-1, 2))
    }

    /// True iff the element is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Square root when the element is `q^2` times a root of unity of the level,
    /// for a rational `q`.
    pub fn sqrt_simple(&self) -> Option<Self> {
        if self.to_rational().is_some() {
            return self.sqrt_rational();
        }
        let level = self.level();
        (1..level as i64).find_map(|m| {
            let rest = self * &Self::zeta_power(level, -m);
            rest.to_rational()?;
            Some(&rest.sqrt_rational()? * &Self::zeta_power(2 * level, m))
        })
    }

    fn sqrt_rational(&self) -> Option<Self> {
        let q = self.to_rational()?;
        let (r, neg) = if q.is_negative() { (-q, true) } else { (q.clone(), false) };
        let n = r.numer().sqrt();
        let d = r.denom().sqrt();
        if &(&n * &n) != r.numer() || &(&d * &d) != r.denom() {
            return None;
        }
        let root = Self::from_rational(Rational::new(n, d), self.level());
        Some(if neg { &root * &Self::i() } else { root })
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level() == other.level() {
            return self.coords == other.coords;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coords == b.coords
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::lift_pair(self, rhs);
        CyclotomicNumber {
            data: a.data.clone(),
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::lift_pair(self, rhs);
        CyclotomicNumber {
            data: a.data.clone(),
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::lift_pair(self, rhs);
        if b.is_rational() {
            return a.scale(&b.coords[0]);
        }
        if a.is_rational() {
            return b.scale(&a.coords[0]);
        }
        let deg = a.data.degree;
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut coords: Vec<Rational> = prod[..deg].to_vec();
        for (j, c) in prod.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in &a.data.powers[j] {
                coords[*i] += c * p;
            }
        }
        CyclotomicNumber {
            data: a.data.clone(),
            coords,
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            data: self.data.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        if self.level() == rhs.level() {
            for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        if self.level() == rhs.level() {
            for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q, 4)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.level())?,
                _ => write!(f, "({c})*z{}^{j}", self.level())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

mod poly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
        trim(a.iter().map(|x| x * c).collect())
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b.last().expect("nonzero divisor").clone();
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }
}
