//! Arithmetic in the prime field `F_p` and its extensions `F_q = F_p[y]/(f(y))`.
//!
//! Elements are stored as coordinate vectors in the polynomial basis
//! `1, y, ..., y^(m-1)` of the modulus. All operations are methods on
//! [`FieldCtx`], which is immutable after construction.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 20;

/// Largest supported field size.
pub const MAX_ORDER: u64 = 1 << 20;

/// An element of `F_q`, as coordinates over `F_p`.
///
/// Coordinates past the extension degree of the owning field are always zero,
/// so equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem {
    coords: [u32; MAX_DEGREE],
}

impl FqElem {
    pub const ZERO: FqElem = FqElem {
        coords: [0; MAX_DEGREE],
    };

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinate `i` in the polynomial basis.
    pub fn coord(&self, i: usize) -> u32 {
        self.coords[i]
    }

    /// Value of the element if it lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u32> {
        if self.coords[1..].iter().all(|&c| c == 0) {
            Some(self.coords[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.coords.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.coords[..=last])
    }
}

/// Description of `F_{p^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    q: u64,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// The prime field `F_p`, represented with modulus `y`.
    pub fn prime(p: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::Param(format!("p = {p} exceeds {MAX_ORDER}")));
        }
        Ok(FieldCtx {
            p,
            m: 1,
            modulus: vec![0, 1],
            q: p as u64,
        })
    }

    /// Builds `F_{p^m}`. Without an explicit modulus the smallest monic
    /// irreducible polynomial of degree `m` is chosen, where candidates are
    /// ordered by `c_0 + c_1 p + ... + c_{m-1} p^(m-1)`.
    pub fn new(p: u32, m: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        let base = FieldCtx::prime(p)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::Param(format!("extension degree {m} out of range")));
        }
        let q = (p as u64)
            .checked_pow(m as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Param(format!("{p}^{m} exceeds {MAX_ORDER}")))?;

        let modulus = match modulus {
            Some(c) => {
                if c.len() != m + 1 || c[m] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients with leading 1, got {:?}",
                        m + 1,
                        c
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if m > 1 && !base_poly(&base, c).is_irreducible(&base) {
                    return Err(Error::ReducibleModulus);
                }
                c.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => {
                let count = q;
                (0..count)
                    .map(|rank| {
                        let mut c = digits(rank, p, m);
                        c.push(1);
                        c
                    })
                    .find(|c| base_poly(&base, c).is_irreducible(&base))
                    .ok_or(Error::ReducibleModulus)?
            }
        };
        Ok(FieldCtx { p, m, modulus, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low to high, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        self.from_prime(1)
    }

    /// The class of `y`, i.e. the generator of the polynomial basis.
    /// For `m = 1` this is the residue of `y` modulo the modulus.
    pub fn generator(&self) -> FqElem {
        if self.m == 1 {
            return self.from_prime((self.p - self.modulus[0] % self.p) as u64);
        }
        let mut e = FqElem::ZERO;
        e.coords[1] = 1;
        e
    }

    /// Embeds an integer into the prime subfield, reducing mod `p`.
    pub fn from_prime(&self, c: u64) -> FqElem {
        let mut e = FqElem::ZERO;
        e.coords[0] = (c % self.p as u64) as u32;
        e
    }

    /// Builds an element from coordinates, canonicalizing each mod `p`.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() > self.m {
            return Err(Error::Param(format!(
                "{} coordinates for extension degree {}",
                coords.len(),
                self.m
            )));
        }
        let mut e = FqElem::ZERO;
        for (slot, &c) in e.coords.iter_mut().zip(coords) {
            *slot = c % self.p;
        }
        Ok(e)
    }

    pub fn coords<'a>(&self, a: &'a FqElem) -> &'a [u32] {
        &a.coords[..self.m]
    }

    /// Integer rank `sum coord_i * p^i`, in `[0, q)`.
    pub fn rank(&self, a: &FqElem) -> u64 {
        a.coords[..self.m]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn from_rank(&self, rank: u64) -> Result<FqElem> {
        if rank >= self.q {
            return Err(Error::Param(format!(
                "rank {rank} not below q = {}",
                self.q
            )));
        }
        let mut e = FqElem::ZERO;
        for (i, d) in digits(rank, self.p, self.m).into_iter().enumerate() {
            e.coords[i] = d;
        }
        Ok(e)
    }

    /// All `q` elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |r| self.from_rank(r).expect("rank in range"))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.from_rank(rng.random_range(0..self.q))
            .expect("rank in range")
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.from_rank(rng.random_range(1..self.q))
            .expect("rank in range")
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let mut r = FqElem::ZERO;
        for i in 0..self.m {
            let s = a.coords[i] + b.coords[i];
            r.coords[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        let mut r = FqElem::ZERO;
        for i in 0..self.m {
            r.coords[i] = if a.coords[i] >= b.coords[i] {
                a.coords[i] - b.coords[i]
            } else {
                a.coords[i] + self.p - b.coords[i]
            };
        }
        r
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        self.sub(FqElem::ZERO, a)
    }

    /// Multiplies by an element of the prime field.
    pub fn scale(&self, a: FqElem, c: u32) -> FqElem {
        let c = (c % self.p) as u64;
        let mut r = FqElem::ZERO;
        for i in 0..self.m {
            r.coords[i] = ((a.coords[i] as u64 * c) % self.p as u64) as u32;
        }
        r
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p as u64;
        if self.m == 1 {
            let mut r = FqElem::ZERO;
            r.coords[0] = ((a.coords[0] as u64 * b.coords[0] as u64) % p) as u32;
            return r;
        }
        let m = self.m;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let ai = a.coords[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + ai * b.coords[j] as u64) % p;
            }
        }
        // y^m = -(f_0 + f_1 y + ... + f_{m-1} y^(m-1))
        for k in (m..2 * m - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let f = self.modulus[i] as u64;
                if f != 0 {
                    prod[k - m + i] = (prod[k - m + i] + c * (p - f)) % p;
                }
            }
        }
        let mut r = FqElem::ZERO;
        for i in 0..m {
            r.coords[i] = (prod[i] % p) as u32;
        }
        r
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// The unique `b` with `b^p = a`, computed as `a^(p^(m-1))`.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        (1..self.m).fold(a, |b, _| self.frobenius(b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let mut ord = n;
        for (prime, _) in factorize(n) {
            while ord % prime == 0 && self.pow(a, ord / prime) == self.one() {
                ord /= prime;
            }
        }
        Ok(ord)
    }

    /// Smallest-rank element of order `q - 1`.
    pub fn primitive_element(&self) -> FqElem {
        self.elements()
            .skip(1)
            .find(|&a| self.order(a).ok() == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.p, self.m)?;
        for c in &self.modulus {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Parses `p m c_0 c_1 ... c_m`.
    fn from_str(s: &str) -> Result<FieldCtx> {
        let nums = s
            .split_whitespace()
            .map(|w| {
                w.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{w:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("field record needs p, m and a modulus".into()));
        }
        let p = u32::try_from(nums[0]).map_err(|_| Error::Parse("p too large".into()))?;
        let m = nums[1] as usize;
        let modulus = nums[2..]
            .iter()
            .map(|&c| u32::try_from(c).map_err(|_| Error::Parse("coefficient too large".into())))
            .collect::<Result<Vec<_>>>()?;
        if modulus.len() != m + 1 {
            return Err(Error::Parse(format!(
                "expected {} modulus coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if m == 1 {
            // any monic linear modulus gives the prime field; keep the canonical one
            let f = FieldCtx::prime(p)?;
            if modulus[1] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            return Ok(FieldCtx {
                modulus: vec![modulus[0] % p, 1],
                ..f
            });
        }
        FieldCtx::new(p, m, Some(&modulus))
    }
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (n % p as u64) as u32;
            n /= p as u64;
            d
        })
        .collect()
}

fn base_poly(base: &FieldCtx, c: &[u32]) -> Poly {
    Poly::from_coeffs(c.iter().map(|&x| base.from_prime(x as u64)).collect())
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2, None).unwrap()
    }

    /// Brute-force table over F_p[y]/(f): multiply integer coefficient
    /// vectors, then long-divide by the modulus.
    fn brute_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = modulus.len() - 1;
        let mut prod = vec![0i64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as i64 * y as i64;
            }
        }
        for k in (m..2 * m).rev() {
            let c = prod[k];
            for i in 0..=m {
                prod[k - m + i] -= c * modulus[i] as i64;
            }
        }
        prod[..m]
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect()
    }

    #[test]
    fn binary_prime_field() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(f.one(), f.one()), f.one());
    }

    #[test]
    fn default_quadratic_over_f3() {
        // Oracle: a monic quadratic over F_3 is irreducible iff it has no root.
        let smallest = (0..9u32)
            .map(|r| [r % 3, r / 3])
            .find(|&[c0, c1]| (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        let f = f9();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), &[smallest[0], smallest[1], 1]);
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_composite_and_reducible() {
        assert_eq!(FieldCtx::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(FieldCtx::new(1, 1, None), Err(Error::NotPrime(1)));
        // y^2 + 2 = (y + 1)(y + 2) over F_3
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[2, 0, 1])),
            Err(Error::ReducibleModulus)
        );
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn y_squared_is_minus_one_in_f9() {
        let f = f9();
        let y = f.generator();
        assert_eq!(f.mul(y, y), f.from_prime(2));
    }

    #[test]
    fn tables_match_brute_force() {
        for (p, m) in [(2, 2), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let expect = brute_mul(p, f.modulus(), f.coords(&a), f.coords(&b));
                    assert_eq!(f.coords(&f.mul(a, b)), &expect[..]);
                    let sum: Vec<u32> = f
                        .coords(&a)
                        .iter()
                        .zip(f.coords(&b))
                        .map(|(x, y)| (x + y) % p)
                        .collect();
                    assert_eq!(f.coords(&f.add(a, b)), &sum[..]);
                }
            }
        }
    }

    #[test]
    fn additive_identity_and_inverses() {
        let f = FieldCtx::new(3, 4, None).unwrap();
        let mut rng = SplitMix64::seed_from_u64(7);
        for a in f.elements() {
            assert_eq!(f.add(a, f.zero()), a);
        }
        for _ in 0..1000 {
            let a = f.random_nonzero(&mut rng);
            assert_eq!(f.mul(f.inv(a).unwrap(), a), f.one());
        }
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fermat_exhaustive() {
        for (p, m) in [(2, 4), (3, 2), (3, 4), (5, 2), (7, 2), (2, 6)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.q() - 1), f.one());
            }
        }
    }

    #[test]
    fn pth_root_in_f9() {
        let f = f9();
        let y = f.generator();
        assert_eq!(f.pth_root(f.zero()), f.zero());
        assert_eq!(f.pth_root(f.one()), f.one());
        // Oracle: cube all nine elements, find the preimage of y.
        let pre: Vec<FqElem> = f.elements().filter(|&b| f.pow(b, 3) == y).collect();
        assert_eq!(pre.len(), 1);
        assert_eq!(pre[0], f.scale(y, 2));
        assert_eq!(f.pth_root(y), pre[0]);
    }

    #[test]
    fn pth_root_round_trip() {
        let f = FieldCtx::new(5, 3, None).unwrap();
        let mut rng = SplitMix64::seed_from_u64(11);
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            assert_eq!(f.pth_root(f.frobenius(a)), a);
        }
    }

    #[test]
    fn rank_and_serialization() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        for (r, a) in f.elements().enumerate() {
            assert_eq!(f.rank(&a), r as u64);
        }
        let text = f.to_string();
        assert_eq!(text.parse::<FieldCtx>().unwrap(), f);
        assert_eq!(
            "2 1 0 1".parse::<FieldCtx>().unwrap(),
            FieldCtx::prime(2).unwrap()
        );
        assert!("3 2 2 0 1".parse::<FieldCtx>().is_err());
    }

    #[test]
    fn primitive_elements_generate() {
        for (p, m) in [(2, 4), (3, 3), (5, 2)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.q() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, f.q() - 1);
        }
    }
}
