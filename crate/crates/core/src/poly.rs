//! Dense univariate polynomials over `F_q`.
//!
//! Besides the ring operations this module carries the two characteristic-p
//! tools the decoder leans on: splitting a polynomial as `sum_k x^k a_k(x)^p`
//! and extracting p-th roots in `F_q[x]/(g)` for square-free `g`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::linalg::{Echelon, FpMatrix};

/// Degree of a polynomial. The zero polynomial has degree `NegInf`, which
/// orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self <= bound`, with `NegInf` below everything.
    pub fn at_most(self, bound: usize) -> bool {
        self <= Degree::Finite(bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients low to high, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(f: &FieldCtx) -> Poly {
        Poly::constant(f.one())
    }

    pub fn constant(c: FqElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn x(f: &FieldCtx) -> Poly {
        Poly::monomial(f.one(), 1)
    }

    /// `c x^k`
    pub fn monomial(c: FqElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `x - a`
    pub fn linear(a: FqElem, f: &FieldCtx) -> Poly {
        Poly::from_coeffs(vec![f.neg(a), f.one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(FqElem::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Coefficients given as prime-field integers.
    pub fn from_ints(c: &[i64], f: &FieldCtx) -> Poly {
        let p = f.p() as i64;
        Poly::from_coeffs(
            c.iter()
                .map(|&x| f.from_prime(x.rem_euclid(p) as u64))
                .collect(),
        )
    }

    /// Coefficients given as field-element ranks.
    pub fn from_ranks(r: &[u64], f: &FieldCtx) -> Result<Poly> {
        Ok(Poly::from_coeffs(
            r.iter().map(|&x| f.from_rank(x)).collect::<Result<_>>()?,
        ))
    }

    pub fn to_ranks(&self, f: &FieldCtx) -> Vec<u64> {
        self.coeffs.iter().map(|c| f.rank(c)).collect()
    }

    /// One line of decimal ranks, low to high. The zero polynomial is `0`.
    pub fn to_line(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.to_ranks(f).iter().map(u64::to_string).collect();
        parts.join(" ")
    }

    pub fn parse_line(line: &str, f: &FieldCtx) -> Result<Poly> {
        let ranks = line
            .split_whitespace()
            .map(|w| {
                w.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{w:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_ranks(&ranks, f)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lead(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: FqElem, f: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `x^k * self`
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, rhs: &Poly, f: &FieldCtx) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// In-place `self -= c x^e rhs`.
    pub fn sub_scaled_shift(&mut self, c: FqElem, e: usize, rhs: &Poly, f: &FieldCtx) {
        if c.is_zero() || rhs.is_zero() {
            return;
        }
        let need = rhs.coeffs.len() + e;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, FqElem::ZERO);
        }
        for (j, &b) in rhs.coeffs.iter().enumerate() {
            if !b.is_zero() {
                self.coeffs[j + e] = f.sub(self.coeffs[j + e], f.mul(c, b));
            }
        }
        while self.coeffs.last().is_some_and(FqElem::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Quotient and remainder with `deg(r) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly, f: &FieldCtx) -> Result<(Poly, Poly)> {
        let Degree::Finite(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Degree::Finite(da) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; da - db + 1];
        for k in (0..=da - db).rev() {
            let c = rem[k + db];
            if c.is_zero() {
                continue;
            }
            let qk = f.mul(c, inv_lead);
            quot[k] = qk;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(qk, b));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        Ok(self.divmod(modulus, f)?.1)
    }

    pub fn mul_mod(&self, rhs: &Poly, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        self.mul(rhs, f).rem(modulus, f)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        let mut base = self.rem(modulus, f)?;
        let mut acc = Poly::one(f).rem(modulus, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, f)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus, f)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32, f: &FieldCtx) -> Poly {
        (0..e).fold(Poly::one(f), |acc, _| acc.mul(self, f))
    }

    /// Formal derivative; the exponent multiplier is reduced mod `p`.
    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.scale(c, (i % f.p() as usize) as u32))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElem, f: &FieldCtx) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero lead");
        self.scale(inv, f)
    }

    /// `self^p`, i.e. every coefficient raised to `p` at exponent `p i`.
    pub fn frobenius(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let p = f.p() as usize;
        let mut coeffs = vec![FqElem::ZERO; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = f.frobenius(c);
        }
        Poly { coeffs }
    }

    /// Monic gcd and Bezout cofactors: `u a + v b = d`.
    pub fn ext_gcd(a: &Poly, b: &Poly, f: &FieldCtx) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, f).expect("nonzero divisor");
            let u = u0.sub(&q.mul(&u1, f), f);
            let v = v0.sub(&q.mul(&v1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        if r0.is_zero() {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let inv = f.inv(r0.lead()).expect("nonzero lead");
        (r0.scale(inv, f), u0.scale(inv, f), v0.scale(inv, f))
    }

    pub fn gcd(a: &Poly, b: &Poly, f: &FieldCtx) -> Poly {
        Poly::ext_gcd(a, b, f).0
    }

    /// `h` with `self * h = 1 (mod modulus)` and `deg(h) < deg(modulus)`.
    pub fn inv_mod(&self, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        match modulus.degree() {
            Degree::Finite(d) if d >= 1 => {}
            _ => return Err(Error::Param("modulus must have degree >= 1".into())),
        }
        let r = self.rem(modulus, f)?;
        let (d, u, _) = Poly::ext_gcd(&r, modulus, f);
        if d != Poly::one(f) {
            return Err(Error::NotInvertible);
        }
        u.rem(modulus, f)
    }

    /// True iff `gcd(g, g')` is constant and `g'` is nonzero.
    pub fn is_square_free(&self, f: &FieldCtx) -> bool {
        if self.is_constant() {
            return true;
        }
        let d = self.derivative(f);
        if d.is_zero() {
            return false;
        }
        Poly::gcd(self, &d, f).is_constant()
    }

    /// Ben-Or test: no factor of degree `i <= t/2` divides `x^(q^i) - x`,
    /// and `x^(q^t) = x (mod g)`.
    pub fn is_irreducible(&self, f: &FieldCtx) -> bool {
        let Degree::Finite(t) = self.degree() else {
            return false;
        };
        if t == 0 {
            return false;
        }
        if t == 1 {
            return true;
        }
        let x = Poly::x(f);
        let mut h = x.clone();
        for _ in 1..=t / 2 {
            h = h.pow_mod(f.q(), self, f).expect("nonzero modulus");
            let diff = h.sub(&x, f);
            if !Poly::gcd(&diff, self, f).is_constant() {
                return false;
            }
        }
        for _ in t / 2 + 1..=t {
            h = h.pow_mod(f.q(), self, f).expect("nonzero modulus");
        }
        h == x.rem(self, f).expect("nonzero modulus")
    }

    /// Uniform polynomial of degree below `bound`.
    pub fn random<R: Rng + ?Sized>(bound: usize, f: &FieldCtx, rng: &mut R) -> Poly {
        Poly::from_coeffs((0..bound).map(|_| f.random(rng)).collect())
    }

    pub fn random_monic<R: Rng + ?Sized>(t: usize, f: &FieldCtx, rng: &mut R) -> Poly {
        let mut coeffs: Vec<FqElem> = (0..t).map(|_| f.random(rng)).collect();
        coeffs.push(f.one());
        Poly { coeffs }
    }

    /// Uniform monic irreducible polynomial of degree `t` (rejection sampling).
    pub fn random_irreducible<R: Rng + ?Sized>(
        t: usize,
        f: &FieldCtx,
        rng: &mut R,
    ) -> Result<Poly> {
        if t == 0 {
            return Err(Error::Param("irreducible degree must be >= 1".into()));
        }
        loop {
            let g = Poly::random_monic(t, f, rng);
            if g.is_irreducible(f) {
                return Ok(g);
            }
        }
    }

    /// Unique `a_0..a_{p-1}` with `self = sum_k x^k a_k^p`.
    pub fn pth_power_decompose(&self, f: &FieldCtx) -> Vec<Poly> {
        let p = f.p() as usize;
        let mut parts = vec![Vec::new(); p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let part = &mut parts[i % p];
            let idx = i / p;
            if part.len() <= idx {
                part.resize(idx + 1, FqElem::ZERO);
            }
            part[idx] = f.pth_root(c);
        }
        parts.into_iter().map(Poly::from_coeffs).collect()
    }

    /// `sum_k x^k parts[k]^p`.
    pub fn pth_power_compose(parts: &[Poly], f: &FieldCtx) -> Poly {
        parts.iter().enumerate().fold(Poly::zero(), |acc, (k, a)| {
            acc.add(&a.frobenius(f).shift(k), f)
        })
    }
}

/// Inverse Frobenius on `F_q[x]/(g)`.
///
/// `y -> y^p` is `F_p`-linear on the `m t`-dimensional space `F_q[x]/(g)`;
/// its matrix is eliminated once and every root is a linear solve. For
/// square-free `g` the map is bijective.
#[derive(Clone, Debug)]
pub struct PthRootMod {
    g: Poly,
    t: usize,
    m: usize,
    solver: Echelon,
}

impl PthRootMod {
    pub fn new(g: &Poly, f: &FieldCtx) -> Result<PthRootMod> {
        let t = match g.degree() {
            Degree::Finite(t) if t >= 1 => t,
            _ => return Err(Error::Param("modulus must have degree >= 1".into())),
        };
        let m = f.m();
        let dim = m * t;
        let mut frob = FpMatrix::zeros(f.p(), dim, dim);

        // y^j basis elements and their p-th powers
        let mut ypow = Vec::with_capacity(m);
        let mut y = f.one();
        for _ in 0..m {
            ypow.push(f.frobenius(y));
            y = f.mul(y, f.generator());
        }
        let xp = Poly::x(f).pow_mod(f.p() as u64, g, f)?;
        let mut xip = Poly::one(f).rem(g, f)?;
        for i in 0..t {
            for (j, &yj) in ypow.iter().enumerate() {
                let image = xip.scale(yj, f);
                let col = i * m + j;
                for (k, c) in image.coeffs().iter().enumerate() {
                    for l in 0..m {
                        frob.set(k * m + l, col, c.coord(l));
                    }
                }
            }
            xip = xip.mul_mod(&xp, g, f)?;
        }
        Ok(PthRootMod {
            g: g.clone(),
            t,
            m,
            solver: frob.echelon(),
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.g
    }

    /// `v` with `v^p = z (mod g)`.
    pub fn root(&self, z: &Poly, f: &FieldCtx) -> Result<Poly> {
        let z = z.rem(&self.g, f)?;
        let mut rhs = vec![0u32; self.t * self.m];
        for (k, c) in z.coeffs().iter().enumerate() {
            for l in 0..self.m {
                rhs[k * self.m + l] = c.coord(l);
            }
        }
        let sol = self.solver.solve(&rhs).ok_or(Error::NoRoot)?;
        let coeffs = sol
            .chunks(self.m)
            .map(|c| f.from_coords(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn is_bijective(&self) -> bool {
        self.solver.pivots.len() == self.t * self.m
    }
}

/// `v` with `v^p = z (mod g)`; see [`PthRootMod`].
pub fn pth_root_mod(z: &Poly, g: &Poly, f: &FieldCtx) -> Result<Poly> {
    PthRootMod::new(g, f)?.root(z, f)
}
