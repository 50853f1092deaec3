//! Generalized Patterson decoding of square-free Goppa codes over `F_p`.
//!
//! For each scale `phi` in `1..p` the locator
//! `sigma_phi(x) = prod_i (x - L_i)^(e_i / phi)` satisfies the key equation
//! `phi sigma_phi' = sigma_phi s_e (mod g)`. Writing
//! `sigma_phi = sum_k x^k a_k^p` turns it into the linear congruence
//! `a_0 + sum_k a_k v_k = 0 (mod g)` with `v_k^p = x^k - phi k x^(k-1) / s_e`,
//! whose short solutions are found by reducing the lattice spanned by
//! `(g, 0, .., 0)` and `(-v_k, e_k)` to weak Popov form.

use std::collections::{BTreeMap, HashMap};

use crate::code::{sub_words, ErrorPattern, GoppaCode};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::lattice::PolyMatrix;
use crate::poly::{Degree, Poly};

/// Sign of the `phi` term in the radicands `u_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `u_k = x^k - phi k x^(k-1) / s`, as derived from the key equation.
    #[default]
    Minus,
    /// `u_k = x^k + phi k x^(k-1) / s`.
    Plus,
}

/// How roots of the locator are located among the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootSearch {
    /// Horner evaluation at every support point.
    #[default]
    Scan,
    /// Incremental evaluation along the powers of a primitive element.
    Chien,
}

/// Lattice basis for one guess of `phi`.
#[derive(Clone, Debug)]
pub struct KeyLattice {
    pub phi: u32,
    /// `v_1 .. v_{p-1}`.
    pub v: Vec<Poly>,
    pub basis: PolyMatrix,
}

/// Generalized error locator together with its scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locator {
    pub poly: Poly,
    pub phi: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub codeword: Vec<u32>,
    pub error: ErrorPattern,
    pub phi: u32,
    /// Monic locator the candidate was read from.
    pub sigma: Poly,
    /// Support index -> root multiplicity.
    pub multiplicities: BTreeMap<usize, u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Ok,
    Empty,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Verified candidates in discovery order.
    pub candidates: Vec<Candidate>,
}

impl DecodeOutcome {
    pub fn status(&self) -> DecodeStatus {
        if self.candidates.is_empty() {
            DecodeStatus::Empty
        } else {
            DecodeStatus::Ok
        }
    }

    pub fn contains(&self, codeword: &[u32]) -> bool {
        self.candidates.iter().any(|c| c.codeword == codeword)
    }
}

/// Builds the key lattice for the syndrome `s` and scale `phi`.
pub fn build_key_lattice(code: &GoppaCode, s: &Poly, phi: u32) -> Result<KeyLattice> {
    let s_inv = s.inv_mod(code.generator(), code.field())?;
    key_lattice_from_inverse(code, &s_inv, phi, SignConvention::Minus)
}

fn key_lattice_from_inverse(
    code: &GoppaCode,
    s_inv: &Poly,
    phi: u32,
    sign: SignConvention,
) -> Result<KeyLattice> {
    let f = code.field();
    let p = f.p();
    if phi == 0 || phi >= p {
        return Err(Error::Param(format!("phi = {phi} not in 1..{p}")));
    }
    let g = code.generator();
    let mut v = Vec::with_capacity(p as usize - 1);
    for k in 1..p as usize {
        let mut coef = f.from_prime((phi as u64 * k as u64) % p as u64);
        if sign == SignConvention::Minus {
            coef = f.neg(coef);
        }
        let u = Poly::monomial(f.one(), k)
            .add(&s_inv.shift(k - 1).scale(coef, f), f)
            .rem(g, f)?;
        v.push(code.pth_roots().root(&u, f)?);
    }
    let size = p as usize;
    let mut rows = Vec::with_capacity(size);
    let mut first = vec![Poly::zero(); size];
    first[0] = g.clone();
    rows.push(first);
    for (k, vk) in v.iter().enumerate() {
        let mut row = vec![Poly::zero(); size];
        row[0] = vk.neg(f);
        row[k + 1] = Poly::one(f);
        rows.push(row);
    }
    Ok(KeyLattice {
        phi,
        v,
        basis: PolyMatrix::new(rows),
    })
}

/// `sigma = sum_j x^j a_j^p`, normalized to be monic. Rejects vectors with
/// `deg(a_j) > floor((t - j) / p)` for some `j`.
pub fn assemble_locator(a: &[Poly], phi: u32, t: usize, f: &FieldCtx) -> Result<Locator> {
    let p = f.p() as usize;
    for (j, aj) in a.iter().enumerate() {
        let ok = if j <= t {
            aj.degree().at_most((t - j) / p)
        } else {
            aj.is_zero()
        };
        if !ok {
            return Err(Error::DegreeBoundViolated(format!(
                "deg(a_{j}) = {} exceeds floor(({t} - {j}) / {p})",
                aj.degree()
            )));
        }
    }
    let sigma = Poly::pth_power_compose(a, f);
    if sigma.is_zero() {
        return Err(Error::DegreeBoundViolated("zero vector".into()));
    }
    Ok(Locator {
        poly: sigma.monic(f),
        phi,
    })
}

/// `prod_i (x - L_i)^(e_i / phi)` with exponents lifted to `0..p`.
pub fn locator_from_error(code: &GoppaCode, e: &[u32], phi: u32) -> Locator {
    let f = code.field();
    let p = f.p() as u64;
    let phi_inv = f.inv(f.from_prime(phi as u64)).expect("phi != 0").coord(0) as u64;
    let poly = e.iter().zip(code.support()).filter(|(&v, _)| v != 0).fold(
        Poly::one(f),
        |acc, (&v, &l)| {
            let exp = (v as u64 * phi_inv % p) as u32;
            acc.mul(&Poly::linear(l, f).pow(exp, f), f)
        },
    );
    Locator { poly, phi }
}

/// Divides by `x - a`, returning quotient and `sigma(a)`.
fn deflate(sigma: &Poly, a: FqElem, f: &FieldCtx) -> (Poly, FqElem) {
    let c = sigma.coeffs();
    if c.is_empty() {
        return (Poly::zero(), FqElem::ZERO);
    }
    let mut quot = vec![FqElem::ZERO; c.len() - 1];
    let mut acc = FqElem::ZERO;
    for i in (0..c.len()).rev() {
        acc = f.add(f.mul(acc, a), c[i]);
        if i > 0 {
            quot[i - 1] = acc;
        }
    }
    (Poly::from_coeffs(quot), acc)
}

pub(crate) fn multiplicity(sigma: &Poly, a: FqElem, f: &FieldCtx) -> u32 {
    let mut cur = sigma.clone();
    let mut mu = 0;
    while !cur.is_zero() {
        let (q, r) = deflate(&cur, a, f);
        if !r.is_zero() {
            break;
        }
        cur = q;
        mu += 1;
    }
    mu
}

/// Incremental evaluation over `F_q^*` along powers of a primitive element.
#[derive(Clone, Debug)]
struct ChienTable {
    alpha: FqElem,
    /// Field-element rank -> support index.
    index_of: HashMap<u64, usize>,
}

impl ChienTable {
    fn new(code: &GoppaCode) -> ChienTable {
        let f = code.field();
        ChienTable {
            alpha: f.primitive_element(),
            index_of: code
                .support()
                .iter()
                .enumerate()
                .map(|(i, a)| (f.rank(a), i))
                .collect(),
        }
    }

    fn roots(&self, sigma: &Poly, f: &FieldCtx) -> Vec<(usize, FqElem)> {
        let mut out = Vec::new();
        if let Some(&i) = self.index_of.get(&0) {
            if sigma.coeff(0).is_zero() {
                out.push((i, FqElem::ZERO));
            }
        }
        let steps: Vec<FqElem> = (0..sigma.coeffs().len())
            .map(|i| f.pow(self.alpha, i as u64))
            .collect();
        let mut terms = sigma.coeffs().to_vec();
        let mut point = f.one();
        for _ in 0..f.q() - 1 {
            let value = terms.iter().fold(FqElem::ZERO, |s, &c| f.add(s, c));
            if value.is_zero() {
                if let Some(&i) = self.index_of.get(&f.rank(&point)) {
                    out.push((i, point));
                }
            }
            for (term, &step) in terms.iter_mut().zip(&steps) {
                *term = f.mul(*term, step);
            }
            point = f.mul(point, self.alpha);
        }
        out.sort_by_key(|&(i, _)| i);
        out
    }
}

/// Support index -> multiplicity of `L_j` as a root of `sigma`.
pub fn find_roots_multiplicities(sigma: &Poly, code: &GoppaCode) -> BTreeMap<usize, u32> {
    let f = code.field();
    code.support()
        .iter()
        .enumerate()
        .filter(|(_, &a)| sigma.eval(a, f).is_zero())
        .map(|(j, &a)| (j, multiplicity(sigma, a, f)))
        .filter(|&(_, mu)| mu > 0)
        .collect()
}

/// Decoder bound to one code.
#[derive(Clone, Debug)]
pub struct Decoder<'a> {
    code: &'a GoppaCode,
    sign: SignConvention,
    chien: Option<ChienTable>,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a GoppaCode) -> Decoder<'a> {
        Decoder {
            code,
            sign: SignConvention::Minus,
            chien: None,
        }
    }

    pub fn with_sign(mut self, sign: SignConvention) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_root_search(mut self, search: RootSearch) -> Self {
        self.chien = match search {
            RootSearch::Scan => None,
            RootSearch::Chien => Some(ChienTable::new(self.code)),
        };
        self
    }

    pub fn code(&self) -> &GoppaCode {
        self.code
    }

    /// Roots of `sigma` in the support with their multiplicities.
    pub fn roots(&self, sigma: &Poly) -> BTreeMap<usize, u32> {
        let f = self.code.field();
        match &self.chien {
            None => find_roots_multiplicities(sigma, self.code),
            Some(table) => table
                .roots(sigma, f)
                .into_iter()
                .map(|(j, a)| (j, multiplicity(sigma, a, f)))
                .filter(|&(_, mu)| mu > 0)
                .collect(),
        }
    }

    pub fn key_lattice(&self, s: &Poly, phi: u32) -> Result<KeyLattice> {
        let s_inv = s.inv_mod(self.code.generator(), self.code.field())?;
        key_lattice_from_inverse(self.code, &s_inv, phi, self.sign)
    }

    /// Decodes `received`, returning every verified candidate codeword.
    pub fn decode(&self, received: &[u32]) -> Result<DecodeOutcome> {
        let code = self.code;
        let f = code.field();
        let p = f.p();
        let n = code.n();
        if received.len() != n || received.iter().any(|&v| v >= p) {
            return Err(Error::Param(format!(
                "received word must be {n} residues below {p}"
            )));
        }
        let column = code.h_syndrome(received);
        if column.iter().all(FqElem::is_zero) {
            return Ok(DecodeOutcome {
                candidates: vec![Candidate {
                    codeword: received.to_vec(),
                    error: ErrorPattern::zero(n),
                    phi: 1,
                    sigma: Poly::one(f),
                    multiplicities: BTreeMap::new(),
                }],
            });
        }
        let s = code.syndrome_from_h(&column);
        let s_inv = match s.inv_mod(code.generator(), f) {
            Ok(inv) => inv,
            Err(Error::NotInvertible) => return Ok(DecodeOutcome::default()),
            Err(e) => return Err(e),
        };

        let mut outcome = DecodeOutcome::default();
        for phi in 1..p {
            let lattice = key_lattice_from_inverse(code, &s_inv, phi, self.sign)?;
            let reduced = lattice.basis.weak_popov(f, false).reduced;
            for row in reduced.rows() {
                let Ok(locator) = assemble_locator(row, phi, code.t(), f) else {
                    continue;
                };
                let multiplicities = self.roots(&locator.poly);
                let mut values = vec![0u32; n];
                for (&j, &mu) in &multiplicities {
                    values[j] = ((phi as u64 * mu as u64) % p as u64) as u32;
                }
                if code.h_syndrome(&values) != column {
                    continue;
                }
                let codeword = sub_words(received, &values, p);
                if outcome.contains(&codeword) {
                    continue;
                }
                outcome.candidates.push(Candidate {
                    codeword,
                    error: ErrorPattern::new(values),
                    phi,
                    sigma: locator.poly,
                    multiplicities,
                });
            }
        }
        Ok(outcome)
    }
}

/// Decodes with the default settings.
pub fn decode(code: &GoppaCode, received: &[u32]) -> Result<DecodeOutcome> {
    Decoder::new(code).decode(received)
}

/// Which radicand sign conventions recover a known single error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignCheck {
    pub minus_verifies: bool,
    pub plus_verifies: bool,
}

/// Decodes a fixed single-error word over `F_27` under both conventions.
pub fn check_sign_conventions() -> Result<SignCheck> {
    let f = FieldCtx::new(3, 3, None)?;
    let g = Poly::from_coeffs(vec![f.generator(), f.one(), f.zero(), f.one()]);
    let g = if g.is_irreducible(&f) {
        g
    } else {
        // deterministic fallback: first irreducible cubic by rank
        (0..f.q().pow(3))
            .map(|r| {
                let mut c: Vec<u64> = (0..3).map(|i| (r / f.q().pow(i)) % f.q()).collect();
                c.push(1);
                Poly::from_ranks(&c, &f).expect("ranks in range")
            })
            .find(|g| g.is_irreducible(&f))
            .expect("irreducible cubics exist")
    };
    let support: Vec<FqElem> = f.elements().collect();
    let code = GoppaCode::new(f, support, g)?;
    let mut received = vec![0u32; code.n()];
    received[4] = 1;
    let verifies = |sign| -> Result<bool> {
        let out = Decoder::new(&code).with_sign(sign).decode(&received)?;
        Ok(out.contains(&vec![0u32; code.n()]))
    };
    Ok(SignCheck {
        minus_verifies: verifies(SignConvention::Minus)?,
        plus_verifies: verifies(SignConvention::Plus)?,
    })
}

/// Degree of `sigma_phi` predicted from the magnitudes: `sum_v (v / phi) w_v`.
pub fn predicted_locator_degree(profile: &BTreeMap<u32, usize>, phi: u32, p: u32) -> usize {
    let phi_inv = crate::linalg::inv_mod_p(phi, p) as u64;
    profile
        .iter()
        .map(|(&v, &w)| (v as u64 * phi_inv % p as u64) as usize * w)
        .sum()
}

/// Smallest locator degree over all scales.
pub fn min_locator_degree(code: &GoppaCode, e: &[u32]) -> Degree {
    (1..code.p())
        .map(|phi| locator_from_error(code, e, phi).poly.degree())
        .min()
        .unwrap_or(Degree::NegInf)
}
