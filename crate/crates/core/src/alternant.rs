//! Restricted alternant codes `A(L, D, r)` with `D_j / L_j` in `F_p^*`, and
//! a Monte-Carlo probe of how often their key lattice can be built at all.
//!
//! The locator here is `prod_i (1 - x L_i)^(e_i xi_i / phi)`, satisfying
//! `-phi sigma' = sigma s_e (mod x^r)`. Its roots are the inverses of the
//! erroneous support points.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use crate::code::{sub_words, ErrorPattern};
use crate::decoder::{assemble_locator, multiplicity, KeyLattice};
use crate::error::{Error, Result};
use crate::experiment::{trial_rng, with_workers};
use crate::field::{FieldCtx, FqElem};
use crate::lattice::PolyMatrix;
use crate::linalg::inv_mod_p;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct AlternantCode {
    field: FieldCtx,
    r: usize,
    support: Vec<FqElem>,
    xi: Vec<u32>,
    d: Vec<FqElem>,
}

impl AlternantCode {
    /// Code with `D_j = xi_j L_j`.
    pub fn new(
        field: FieldCtx,
        support: Vec<FqElem>,
        xi: Vec<u32>,
        r: usize,
    ) -> Result<AlternantCode> {
        let p = field.p();
        if r == 0 {
            return Err(Error::Param("syndrome length r must be >= 1".into()));
        }
        if support.is_empty() || support.len() != xi.len() {
            return Err(Error::Param(
                "support and xi must be nonempty and of equal length".into(),
            ));
        }
        if support.iter().any(FqElem::is_zero) {
            return Err(Error::Param("support elements must be nonzero".into()));
        }
        let mut sorted = support.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != support.len() {
            return Err(Error::Param("support elements must be distinct".into()));
        }
        if xi.iter().any(|&x| x == 0 || x >= p) {
            return Err(Error::Param(format!("xi values must lie in 1..{p}")));
        }
        let d = support
            .iter()
            .zip(&xi)
            .map(|(&l, &x)| field.scale(l, x))
            .collect();
        Ok(AlternantCode {
            field,
            r,
            support,
            xi,
            d,
        })
    }

    /// Random distinct nonzero support of size `n` and uniform `xi`.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldCtx,
        n: usize,
        r: usize,
        rng: &mut R,
    ) -> Result<AlternantCode> {
        let q = field.q() as usize;
        if n == 0 || n > q - 1 {
            return Err(Error::Param(format!("n = {n} not in 1..{}", q - 1)));
        }
        let support = index::sample(rng, q - 1, n)
            .into_iter()
            .map(|i| field.from_rank(i as u64 + 1).expect("rank in range"))
            .collect();
        let xi = (0..n).map(|_| rng.random_range(1..field.p())).collect();
        AlternantCode::new(field.clone(), support, xi, r)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn support(&self) -> &[FqElem] {
        &self.support
    }

    pub fn xi(&self) -> &[u32] {
        &self.xi
    }

    pub fn column_multipliers(&self) -> &[FqElem] {
        &self.d
    }

    /// `s_i = sum_j e_j D_j L_j^i` for `i < r`.
    pub fn syndrome(&self, e: &[u32]) -> Poly {
        let f = &self.field;
        let mut s = vec![FqElem::ZERO; self.r];
        for ((&v, &l), &d) in e.iter().zip(&self.support).zip(&self.d) {
            if v == 0 {
                continue;
            }
            let mut term = f.scale(d, v);
            for si in s.iter_mut() {
                *si = f.add(*si, term);
                term = f.mul(term, l);
            }
        }
        Poly::from_coeffs(s)
    }

    /// `sum_j e_j D_j / (1 - x L_j) mod x^r`, via power-series inverses.
    pub fn syndrome_series(&self, e: &[u32]) -> Poly {
        let f = &self.field;
        e.iter()
            .zip(&self.support)
            .zip(&self.d)
            .filter(|((&v, _), _)| v != 0)
            .fold(Poly::zero(), |acc, ((&v, &l), &d)| {
                let denom = Poly::from_coeffs(vec![f.one(), f.neg(l)]);
                let inv = series_inverse(&denom, self.r, f).expect("constant term is one");
                acc.add(&inv.scale(f.scale(d, v), f), f)
            })
    }

    pub fn is_codeword(&self, word: &[u32]) -> bool {
        self.syndrome(word).is_zero()
    }
}

/// `a mod x^r`.
pub fn truncate(a: &Poly, r: usize) -> Poly {
    Poly::from_coeffs(a.coeffs().iter().take(r).copied().collect())
}

/// Inverse of `a` modulo `x^r`.
pub fn series_inverse(a: &Poly, r: usize, f: &FieldCtx) -> Result<Poly> {
    let a0_inv = f.inv(a.coeff(0)).map_err(|_| Error::NotInvertible)?;
    let mut b = Vec::with_capacity(r);
    for i in 0..r {
        if i == 0 {
            b.push(a0_inv);
            continue;
        }
        let acc = (1..=i).fold(FqElem::ZERO, |s, j| f.add(s, f.mul(a.coeff(j), b[i - j])));
        b.push(f.neg(f.mul(acc, a0_inv)));
    }
    Ok(Poly::from_coeffs(b))
}

/// A `v` with `v^p = u (mod x^r)` and `deg v < ceil(r / p)`, if one exists:
/// every coefficient of `u mod x^r` off the multiples of `p` must vanish.
pub fn pth_root_mod_xr(u: &Poly, r: usize, f: &FieldCtx) -> Option<Poly> {
    let p = f.p() as usize;
    if (0..r).any(|j| j % p != 0 && !u.coeff(j).is_zero()) {
        return None;
    }
    let v = (0..r.div_ceil(p))
        .map(|i| f.pth_root(u.coeff(i * p)))
        .collect();
    Some(Poly::from_coeffs(v))
}

/// Tries to build the key lattice for `phi`. Returns `Ok(None)` when some
/// radicand `x^k + phi k x^(k-1) / s` is not a `p`-th power mod `x^r`.
///
/// Because each `v_k` is only determined modulo `x^ceil(r/p)`, the first
/// basis row is `(x^ceil(r/p), 0, .., 0)`.
pub fn try_build_alternant_lattice(
    code: &AlternantCode,
    s: &Poly,
    phi: u32,
) -> Result<Option<KeyLattice>> {
    let f = code.field();
    let p = f.p();
    let r = code.r();
    if phi == 0 || phi >= p {
        return Err(Error::Param(format!("phi = {phi} not in 1..{p}")));
    }
    let s_inv = series_inverse(s, r, f)?;
    let mut v = Vec::with_capacity(p as usize - 1);
    for k in 1..p as usize {
        let coef = f.from_prime((phi as u64 * k as u64) % p as u64);
        let u = truncate(
            &Poly::monomial(f.one(), k).add(&s_inv.shift(k - 1).scale(coef, f), f),
            r,
        );
        match pth_root_mod_xr(&u, r, f) {
            Some(vk) => v.push(vk),
            None => return Ok(None),
        }
    }
    let size = p as usize;
    let mut rows = Vec::with_capacity(size);
    let mut first = vec![Poly::zero(); size];
    first[0] = Poly::monomial(f.one(), r.div_ceil(p as usize));
    rows.push(first);
    for (k, vk) in v.iter().enumerate() {
        let mut row = vec![Poly::zero(); size];
        row[0] = vk.neg(f);
        row[k + 1] = Poly::one(f);
        rows.push(row);
    }
    Ok(Some(KeyLattice {
        phi,
        v,
        basis: PolyMatrix::new(rows),
    }))
}

/// `prod_i (1 - x L_i)^(e_i xi_i / phi)`, exponents lifted to `0..p`.
pub fn alternant_locator(code: &AlternantCode, e: &[u32], phi: u32) -> Poly {
    let f = code.field();
    let p = f.p() as u64;
    let phi_inv = inv_mod_p(phi, f.p()) as u64;
    e.iter()
        .zip(code.support())
        .zip(code.xi())
        .filter(|((&v, _), _)| v != 0)
        .fold(Poly::one(f), |acc, ((&v, &l), &x)| {
            let exp = (v as u64 * x as u64 % p * phi_inv % p) as u32;
            let factor = Poly::from_coeffs(vec![f.one(), f.neg(l)]);
            acc.mul(&factor.pow(exp, f), f)
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternantCandidate {
    pub codeword: Vec<u32>,
    pub error: ErrorPattern,
    pub phi: u32,
    pub sigma: Poly,
}

/// Lattice decoding of a restricted alternant code. Scales whose lattice
/// cannot be built are skipped; every candidate is syndrome-verified.
pub fn decode_alternant(code: &AlternantCode, received: &[u32]) -> Result<Vec<AlternantCandidate>> {
    let f = code.field();
    let p = f.p();
    let n = code.n();
    if received.len() != n || received.iter().any(|&v| v >= p) {
        return Err(Error::Param(format!(
            "received word must be {n} residues below {p}"
        )));
    }
    let s = code.syndrome(received);
    if s.is_zero() {
        return Ok(vec![AlternantCandidate {
            codeword: received.to_vec(),
            error: ErrorPattern::zero(n),
            phi: 1,
            sigma: Poly::one(f),
        }]);
    }
    if s.coeff(0).is_zero() {
        return Ok(Vec::new());
    }
    let inverses: Vec<FqElem> = code
        .support()
        .iter()
        .map(|&l| f.inv(l).expect("support is nonzero"))
        .collect();
    let mut out: Vec<AlternantCandidate> = Vec::new();
    for phi in 1..p {
        let Some(lattice) = try_build_alternant_lattice(code, &s, phi)? else {
            continue;
        };
        let reduced = lattice.basis.weak_popov(f, false).reduced;
        for row in reduced.rows() {
            let Ok(locator) = assemble_locator(row, phi, code.r(), f) else {
                continue;
            };
            let mut values = vec![0u32; n];
            for (j, &beta) in inverses.iter().enumerate() {
                let mu = multiplicity(&locator.poly, beta, f);
                let xi_inv = inv_mod_p(code.xi()[j], p) as u64;
                values[j] = (phi as u64 * mu as u64 % p as u64 * xi_inv % p as u64) as u32;
            }
            if code.syndrome(&values) != s {
                continue;
            }
            let codeword = sub_words(received, &values, p);
            if out.iter().any(|c| c.codeword == codeword) {
                continue;
            }
            out.push(AlternantCandidate {
                codeword,
                error: ErrorPattern::new(values),
                phi,
                sigma: locator.poly,
            });
        }
    }
    Ok(out)
}

/// `p^(-m r (p-1)^2 / p)`.
pub fn predicted_feasibility(p: u32, m: usize, r: usize) -> f64 {
    let p = p as f64;
    p.powf(-(m as f64) * r as f64 * (p - 1.0).powi(2) / p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    pub trials: usize,
    pub feasible: usize,
    pub estimate: f64,
    pub predicted: f64,
    /// `estimate -+ 3 sigma`, clipped to `[0, 1]`.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl ProbeReport {
    /// `p m r trials feasible_count estimate predicted ci_low ci_high`.
    pub fn line(&self) -> String {
        format!(
            "{} {} {} {} {} {:.6} {:.6} {:.6} {:.6}",
            self.p,
            self.m,
            self.r,
            self.trials,
            self.feasible,
            self.estimate,
            self.predicted,
            self.ci_low,
            self.ci_high
        )
    }

    /// Whether the estimate is within a factor `factor` of the prediction.
    pub fn within_factor(&self, factor: f64) -> bool {
        self.estimate >= self.predicted / factor && self.estimate <= self.predicted * factor
    }
}

/// One probe instance: a random full-length restricted code, a random
/// nonzero word with invertible syndrome, and a random scale. Feasible when
/// every `v_k` exists.
fn probe_once<R: Rng + ?Sized>(field: &FieldCtx, r: usize, rng: &mut R) -> Result<bool> {
    let n = field.q() as usize - 1;
    let p = field.p();
    let code = AlternantCode::random(field, n, r, rng)?;
    // an error-free word or one with s(0) = 0 never reaches the lattice step
    let s = loop {
        let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..p)).collect();
        let s = code.syndrome(&e);
        if !s.coeff(0).is_zero() {
            break s;
        }
    };
    let phi = rng.random_range(1..p);
    Ok(try_build_alternant_lattice(&code, &s, phi)?.is_some())
}

/// Monte-Carlo frequency of feasible lattice construction.
pub fn feasibility_probe(
    p: u32,
    m: usize,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(Error::Param("trials must be >= 1".into()));
    }
    let field = FieldCtx::new(p, m, None)?;
    if field.q() < 3 {
        return Err(Error::Param("the probe needs q >= 3".into()));
    }
    let hits: Result<Vec<bool>> = with_workers(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| probe_once(&field, r, &mut trial_rng(seed, i)))
            .collect()
    });
    let feasible = hits?.into_iter().filter(|&h| h).count();
    Ok(ProbeReport::from_counts(p, m, r, trials, feasible))
}

impl ProbeReport {
    pub fn from_counts(p: u32, m: usize, r: usize, trials: usize, feasible: usize) -> ProbeReport {
        let estimate = feasible as f64 / trials as f64;
        let sigma = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        ProbeReport {
            p,
            m,
            r,
            trials,
            feasible,
            estimate,
            predicted: predicted_feasibility(p, m, r),
            ci_low: (estimate - 3.0 * sigma).max(0.0),
            ci_high: (estimate + 3.0 * sigma).min(1.0),
        }
    }
}
