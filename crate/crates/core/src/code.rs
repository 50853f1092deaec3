//! Goppa codes `Γ(L, g)` over `F_p`: construction, parity-check matrices,
//! syndromes and sampling of codewords and error patterns.
//!
//! The parity-check matrix follows the Toeplitz-Vandermonde-diagonal
//! factorisation `H = T V D`. Row `i` of `H e^T` is the coefficient of
//! `x^(t-1-i)` of the syndrome polynomial with the sign flipped, so the two
//! are related by [`GoppaCode::syndrome_from_h`] and
//! [`GoppaCode::h_from_syndrome`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::linalg::{random_combination, FpMatrix};
use crate::poly::{Degree, Poly, PthRootMod};

/// How the Goppa polynomial is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorKind {
    #[default]
    Irreducible,
    /// Product of at least two distinct irreducible factors.
    SquareFree,
}

#[derive(Clone, Debug)]
pub struct GoppaCode {
    field: FieldCtx,
    support: Vec<FqElem>,
    g: Poly,
    t: usize,
    h: Vec<Vec<FqElem>>,
    hbar: FpMatrix,
    kernel: Vec<Vec<u32>>,
    roots: PthRootMod,
}

impl GoppaCode {
    /// Validates `(L, g)` and builds every cached matrix.
    pub fn new(field: FieldCtx, support: Vec<FqElem>, g: Poly) -> Result<GoppaCode> {
        let t = match g.degree() {
            Degree::Finite(t) if t >= 1 => t,
            _ => {
                return Err(Error::Param(
                    "Goppa polynomial must have degree >= 1".into(),
                ))
            }
        };
        if g.lead() != field.one() {
            return Err(Error::Param("Goppa polynomial must be monic".into()));
        }
        let n = support.len();
        if n == 0 || n as u64 > field.q() {
            return Err(Error::Param(format!(
                "length {n} must lie in 1..={}",
                field.q()
            )));
        }
        if n <= field.m() * t {
            return Err(Error::Param(format!(
                "n - m t = {n} - {} is not positive",
                field.m() * t
            )));
        }
        let mut sorted = support.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Param("support elements must be distinct".into()));
        }
        if support.iter().any(|&a| g.eval(a, &field).is_zero()) {
            return Err(Error::Param("support contains a root of g".into()));
        }
        if !g.is_square_free(&field) {
            return Err(Error::Param("Goppa polynomial must be square-free".into()));
        }

        let h = parity_check_matrix(&field, &support, &g, t);
        let hbar = trace_matrix(&field, &h, n);
        let kernel = hbar.kernel_basis();
        let roots = PthRootMod::new(&g, &field)?;
        Ok(GoppaCode {
            field,
            support,
            g,
            t,
            h,
            hbar,
            kernel,
            roots,
        })
    }

    /// Random code over `field` with a uniformly random support of size `n`
    /// drawn from the non-roots of `g`, in random order.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldCtx,
        t: usize,
        n: usize,
        kind: GeneratorKind,
        rng: &mut R,
    ) -> Result<GoppaCode> {
        let q = field.q();
        if t == 0 {
            return Err(Error::Param("degree t must be >= 1".into()));
        }
        if n as u64 > q {
            return Err(Error::Param(format!("n = {n} exceeds q = {q}")));
        }
        if n <= field.m() * t {
            return Err(Error::Param(format!(
                "n - m t = {n} - {} is not positive",
                field.m() * t
            )));
        }
        if kind == GeneratorKind::SquareFree && t < 2 {
            return Err(Error::Param("a composite generator needs t >= 2".into()));
        }
        for _ in 0..100 {
            let g = match kind {
                GeneratorKind::Irreducible => Poly::random_irreducible(t, field, rng)?,
                GeneratorKind::SquareFree => random_square_free(t, field, rng)?,
            };
            let mut pool: Vec<FqElem> = field
                .elements()
                .filter(|&a| !g.eval(a, field).is_zero())
                .collect();
            if pool.len() < n {
                continue;
            }
            pool.shuffle(rng);
            pool.truncate(n);
            return GoppaCode::new(field.clone(), pool, g);
        }
        Err(Error::Param(format!(
            "could not draw a generator leaving {n} non-roots in F_{q}"
        )))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn support(&self) -> &[FqElem] {
        &self.support
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Dimension over `F_p` of the code.
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// `H = T V D`, `t x n` over `F_q`.
    pub fn parity_check(&self) -> &[Vec<FqElem>] {
        &self.h
    }

    /// Coordinate expansion of `H`, `m t x n` over `F_p`.
    pub fn trace_parity_check(&self) -> &FpMatrix {
        &self.hbar
    }

    pub fn kernel_basis(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    pub fn pth_roots(&self) -> &PthRootMod {
        &self.roots
    }

    /// `H w^T`.
    pub fn h_syndrome(&self, word: &[u32]) -> Vec<FqElem> {
        assert_eq!(word.len(), self.n(), "word length");
        let f = &self.field;
        self.h
            .iter()
            .map(|row| {
                row.iter().zip(word).fold(FqElem::ZERO, |acc, (&h, &w)| {
                    if w == 0 {
                        acc
                    } else {
                        f.add(acc, f.scale(h, w))
                    }
                })
            })
            .collect()
    }

    /// `Hbar w^T` over `F_p`.
    pub fn hbar_syndrome(&self, word: &[u32]) -> Vec<u32> {
        self.hbar.mul_vec(word)
    }

    /// `s_e(x) = sum_i e_i / (x - L_i) mod g`, one modular inverse per position.
    pub fn syndrome_poly(&self, e: &[u32]) -> Poly {
        assert_eq!(e.len(), self.n(), "word length");
        let f = &self.field;
        e.iter()
            .zip(&self.support)
            .filter(|(&v, _)| v != 0)
            .fold(Poly::zero(), |acc, (&v, &l)| {
                let inv = Poly::linear(l, f).inv_mod(&self.g, f).expect("g(L_i) != 0");
                acc.add(&inv.scale(f.from_prime(v as u64), f), f)
            })
    }

    /// Syndrome polynomial from an `H`-syndrome column:
    /// `s_{t-1-i} = -(H e^T)_i`.
    pub fn syndrome_from_h(&self, column: &[FqElem]) -> Poly {
        let f = &self.field;
        let t = self.t;
        Poly::from_coeffs((0..t).map(|k| f.neg(column[t - 1 - k])).collect())
    }

    /// Inverse of [`GoppaCode::syndrome_from_h`].
    pub fn h_from_syndrome(&self, s: &Poly) -> Vec<FqElem> {
        let f = &self.field;
        let t = self.t;
        (0..t).map(|i| f.neg(s.coeff(t - 1 - i))).collect()
    }

    /// Expands an `F_q` syndrome column into `m t` prime-field coordinates.
    pub fn expand_syndrome(&self, column: &[FqElem]) -> Vec<u32> {
        let f = &self.field;
        column.iter().flat_map(|c| f.coords(c).to_vec()).collect()
    }

    /// Inverts the trace construction on a syndrome.
    pub fn reassemble_syndrome(&self, expanded: &[u32]) -> Result<Vec<FqElem>> {
        let m = self.field.m();
        if expanded.len() != m * self.t {
            return Err(Error::Param(format!(
                "expected {} coordinates, got {}",
                m * self.t,
                expanded.len()
            )));
        }
        expanded
            .chunks(m)
            .map(|c| self.field.from_coords(c))
            .collect()
    }

    pub fn is_codeword(&self, word: &[u32]) -> bool {
        self.hbar_syndrome(word).iter().all(|&v| v == 0)
    }

    /// Uniform codeword: random `F_p` combination of the kernel basis.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u32> {
        random_combination(&self.kernel, self.n(), self.p(), rng)
    }

    /// Serializes as four lines: `p m t n`, the field modulus, `g` and `L`,
    /// with field elements written as ranks `sum coord_i p^i`.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let mut out = String::new();
        writeln!(out, "{} {} {} {}", f.p(), f.m(), self.t, self.n()).unwrap();
        let modulus: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        writeln!(out, "{}", modulus.join(" ")).unwrap();
        writeln!(out, "{}", self.g.to_line(f)).unwrap();
        let support: Vec<String> = self.support.iter().map(|a| f.rank(a).to_string()).collect();
        writeln!(out, "{}", support.join(" ")).unwrap();
        out
    }

    pub fn from_text(text: &str) -> Result<GoppaCode> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what} line")))
        };
        let header = parse_nums(next("header")?)?;
        let [p, m, t, n] = header[..] else {
            return Err(Error::Parse("header must be `p m t n`".into()));
        };
        let modulus = next("modulus")?;
        let field: FieldCtx = format!("{p} {m} {modulus}").parse()?;
        let g = Poly::parse_line(next("generator")?, &field)?;
        if g.degree() != Degree::Finite(t as usize) {
            return Err(Error::Parse(format!(
                "generator degree {} != t = {t}",
                g.degree()
            )));
        }
        let support = parse_nums(next("support")?)?
            .into_iter()
            .map(|r| field.from_rank(r))
            .collect::<Result<Vec<_>>>()?;
        if support.len() as u64 != n {
            return Err(Error::Parse(format!(
                "support has {} entries, header says {n}",
                support.len()
            )));
        }
        GoppaCode::new(field, support, g)
    }
}

fn parse_nums(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|w| {
            w.parse::<u64>()
                .map_err(|e| Error::Parse(format!("{w:?}: {e}")))
        })
        .collect()
}

/// `n` decimal residues separated by spaces.
pub fn format_word(word: &[u32]) -> String {
    let parts: Vec<String> = word.iter().map(u32::to_string).collect();
    parts.join(" ")
}

pub fn parse_word(text: &str, n: usize, p: u32) -> Result<Vec<u32>> {
    let word = text
        .split_whitespace()
        .map(|w| {
            w.parse::<u32>()
                .map_err(|e| Error::Parse(format!("{w:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if word.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} residues, got {}",
            word.len()
        )));
    }
    if let Some(bad) = word.iter().find(|&&v| v >= p) {
        return Err(Error::Parse(format!("residue {bad} not below p = {p}")));
    }
    Ok(word)
}

fn parity_check_matrix(f: &FieldCtx, support: &[FqElem], g: &Poly, t: usize) -> Vec<Vec<FqElem>> {
    let n = support.len();
    // T_{il} = g_{t-i+l} for l <= i
    let toep: Vec<Vec<FqElem>> = (0..t)
        .map(|i| {
            (0..t)
                .map(|l| {
                    if l <= i {
                        g.coeff(t - i + l)
                    } else {
                        FqElem::ZERO
                    }
                })
                .collect()
        })
        .collect();
    let mut h = vec![vec![FqElem::ZERO; n]; t];
    for (j, &l) in support.iter().enumerate() {
        let d = f.inv(g.eval(l, f)).expect("g(L_j) != 0");
        let mut powers = Vec::with_capacity(t);
        let mut acc = f.one();
        for _ in 0..t {
            powers.push(acc);
            acc = f.mul(acc, l);
        }
        for i in 0..t {
            let tv = toep[i]
                .iter()
                .zip(&powers)
                .fold(FqElem::ZERO, |s, (&a, &b)| f.add(s, f.mul(a, b)));
            h[i][j] = f.mul(tv, d);
        }
    }
    h
}

fn trace_matrix(f: &FieldCtx, h: &[Vec<FqElem>], n: usize) -> FpMatrix {
    let m = f.m();
    let mut hbar = FpMatrix::zeros(f.p(), h.len() * m, n);
    for (r, row) in h.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            for k in 0..m {
                hbar.set(r * m + k, j, c.coord(k));
            }
        }
    }
    hbar
}

fn random_square_free<R: Rng + ?Sized>(t: usize, f: &FieldCtx, rng: &mut R) -> Result<Poly> {
    let mut factors: Vec<Poly> = Vec::new();
    let mut left = t;
    while left > 0 {
        // at least two factors
        let hi = if left == t { t - 1 } else { left };
        let d = rng.random_range(1..=hi);
        let h = Poly::random_irreducible(d, f, rng)?;
        if factors.contains(&h) {
            continue;
        }
        factors.push(h);
        left -= d;
    }
    Ok(factors.iter().fold(Poly::one(f), |acc, h| acc.mul(h, f)))
}

/// A word of `F_p^n` meant as an error vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    values: Vec<u32>,
}

/// Distribution of the nonzero error magnitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MagnitudeDist {
    /// Every magnitude equals the given value.
    Equal(u32),
    /// Every magnitude equals one value drawn uniformly from `1..p`.
    EqualRandom,
    /// Independent uniform magnitudes in `1..p`.
    Uniform,
    /// Exact magnitude counts; must sum to the weight.
    Profile(BTreeMap<u32, usize>),
}

impl ErrorPattern {
    pub fn new(values: Vec<u32>) -> ErrorPattern {
        ErrorPattern { values }
    }

    pub fn zero(n: usize) -> ErrorPattern {
        ErrorPattern { values: vec![0; n] }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    /// Nonzero value -> number of occurrences.
    pub fn magnitude_profile(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &v in self.values.iter().filter(|&&v| v != 0) {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }

    /// `(position, value)` for each nonzero entry.
    pub fn support(&self) -> Vec<(usize, u32)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
            .collect()
    }

    /// Weight-`w` pattern on uniformly chosen distinct positions.
    pub fn sample<R: Rng + ?Sized>(
        n: usize,
        p: u32,
        w: usize,
        dist: &MagnitudeDist,
        rng: &mut R,
    ) -> Result<ErrorPattern> {
        if w > n {
            return Err(Error::Param(format!("weight {w} exceeds length {n}")));
        }
        let mut magnitudes: Vec<u32> = match dist {
            MagnitudeDist::Equal(v) => {
                if *v == 0 || *v >= p {
                    return Err(Error::Param(format!("magnitude {v} not in 1..{p}")));
                }
                vec![*v; w]
            }
            MagnitudeDist::EqualRandom => vec![rng.random_range(1..p); w],
            MagnitudeDist::Uniform => (0..w).map(|_| rng.random_range(1..p)).collect(),
            MagnitudeDist::Profile(profile) => {
                if profile.keys().any(|&v| v == 0 || v >= p) {
                    return Err(Error::Param(format!(
                        "profile magnitudes must lie in 1..{p}"
                    )));
                }
                if profile.values().sum::<usize>() != w {
                    return Err(Error::Param("profile counts must sum to the weight".into()));
                }
                let mut m: Vec<u32> = profile
                    .iter()
                    .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
                    .collect();
                m.shuffle(rng);
                m
            }
        };
        let mut values = vec![0u32; n];
        for pos in index::sample(rng, n, w).into_iter() {
            values[pos] = magnitudes.pop().expect("one magnitude per position");
        }
        Ok(ErrorPattern { values })
    }
}

/// `a - b` entrywise mod `p`.
pub fn sub_words(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// `a + b` entrywise mod `p`.
pub fn add_words(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    fn code(p: u32, m: usize, t: usize, n: usize, seed: u64) -> GoppaCode {
        let f = FieldCtx::new(p, m, None).unwrap();
        let mut rng = SplitMix64::seed_from_u64(seed);
        GoppaCode::random(&f, t, n, GeneratorKind::Irreducible, &mut rng).unwrap()
    }

    fn random_word(n: usize, p: u32, rng: &mut SplitMix64) -> Vec<u32> {
        (0..n).map(|_| rng.random_range(0..p)).collect()
    }

    #[test]
    fn table_row_dimensions() {
        let c = code(3, 3, 8, 27, 1);
        assert_eq!(c.n(), 27);
        assert_eq!(c.trace_parity_check().rows(), 24);
        assert!(c.dimension() >= 3);

        let b = code(2, 4, 3, 16, 2);
        assert_eq!(b.n(), 16);
        assert!(b.dimension() >= 16 - 12);
    }

    #[test]
    fn dimension_rule_rejected() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        let mut rng = SplitMix64::seed_from_u64(0);
        assert!(matches!(
            GoppaCode::random(&f, 9, 27, GeneratorKind::Irreducible, &mut rng),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            GoppaCode::random(&f, 2, 28, GeneratorKind::Irreducible, &mut rng),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn degree_one_parity_check_is_inverse_row() {
        let f = FieldCtx::new(5, 1, None).unwrap();
        let a = f.from_prime(3);
        let g = Poly::linear(a, &f);
        let support: Vec<FqElem> = [0, 1, 2, 4].iter().map(|&v| f.from_prime(v)).collect();
        let c = GoppaCode::new(f.clone(), support.clone(), g).unwrap();
        let h = c.parity_check();
        assert_eq!(h.len(), 1);
        for (j, &l) in support.iter().enumerate() {
            assert_eq!(h[0][j], f.inv(f.sub(l, a)).unwrap());
        }
    }

    #[test]
    fn syndrome_matches_parity_check() {
        let mut rng = SplitMix64::seed_from_u64(3);
        for (p, m, t, n) in [(3, 2, 3, 9), (2, 4, 3, 16), (5, 2, 4, 25)] {
            let c = code(p, m, t, n, 10 + p as u64);
            for _ in 0..200 {
                let e = random_word(n, p, &mut rng);
                let s = c.syndrome_poly(&e);
                assert!(s.degree() < Degree::Finite(t));
                let col = c.h_syndrome(&e);
                assert_eq!(c.syndrome_from_h(&col), s);
                assert_eq!(c.h_from_syndrome(&s), col);
            }
        }
    }

    #[test]
    fn syndrome_is_linear_and_single_error_is_inverse() {
        let c = code(3, 3, 4, 27, 4);
        let f = c.field();
        let mut rng = SplitMix64::seed_from_u64(5);
        assert!(c.syndrome_poly(&vec![0; 27]).is_zero());
        assert!(c.h_syndrome(&vec![0; 27]).iter().all(FqElem::is_zero));
        let mut e = vec![0; 27];
        e[5] = 1;
        let expect = Poly::linear(c.support()[5], f)
            .inv_mod(c.generator(), f)
            .unwrap();
        assert_eq!(c.syndrome_poly(&e), expect);
        for _ in 0..500 {
            let e1 = random_word(27, 3, &mut rng);
            let e2 = random_word(27, 3, &mut rng);
            let sum = add_words(&e1, &e2, 3);
            assert_eq!(
                c.syndrome_poly(&sum),
                c.syndrome_poly(&e1).add(&c.syndrome_poly(&e2), f)
            );
        }
    }

    #[test]
    fn trace_construction() {
        let c = code(3, 3, 4, 27, 6);
        let mut rng = SplitMix64::seed_from_u64(7);
        for _ in 0..300 {
            let col: Vec<FqElem> = (0..4).map(|_| c.field().random(&mut rng)).collect();
            assert_eq!(
                c.reassemble_syndrome(&c.expand_syndrome(&col)).unwrap(),
                col
            );
            let w = random_word(27, 3, &mut rng);
            assert_eq!(c.hbar_syndrome(&w), c.expand_syndrome(&c.h_syndrome(&w)));
        }
        let prime = code(7, 1, 2, 7, 8);
        let h = prime.parity_check();
        for (i, row) in h.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(prime.trace_parity_check().get(i, j), v.coord(0));
            }
        }
    }

    #[test]
    fn codewords_have_zero_syndrome() {
        let c = code(3, 3, 6, 27, 9);
        let mut rng = SplitMix64::seed_from_u64(10);
        assert!(c.is_codeword(&vec![0; 27]));
        assert!(c.dimension() >= 27 - 18);
        for _ in 0..500 {
            let w = c.random_codeword(&mut rng);
            assert!(c.syndrome_poly(&w).is_zero());
            let weight = w.iter().filter(|&&v| v != 0).count();
            assert!(weight == 0 || weight > c.t());
        }
    }

    #[test]
    fn square_free_generator() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        let mut rng = SplitMix64::seed_from_u64(11);
        for _ in 0..20 {
            let c = GoppaCode::random(&f, 3, 12, GeneratorKind::SquareFree, &mut rng).unwrap();
            assert!(c.generator().is_square_free(&f));
            assert!(!c.generator().is_irreducible(&f));
            for &l in c.support() {
                assert!(!c.generator().eval(l, &f).is_zero());
            }
        }
    }

    #[test]
    fn rejects_invalid_codes() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let g = Poly::from_ints(&[1, 0, 1], &f); // x^2 + 1, irreducible over F_3
        let s: Vec<FqElem> = f.elements().collect();
        // n - m t = 3 - 2 > 0 is fine
        assert!(GoppaCode::new(f.clone(), s.clone(), g.clone()).is_ok());
        let dup = vec![s[0], s[0], s[1]];
        assert!(GoppaCode::new(f.clone(), dup, g).is_err());
        let root = Poly::linear(s[1], &f).mul(&Poly::linear(s[2], &f), &f);
        assert!(GoppaCode::new(f.clone(), s.clone(), root).is_err());
        let square = Poly::from_ints(&[1, 2, 1], &f); // (x + 1)^2
        assert!(GoppaCode::new(f, vec![s[0], s[1], s[2]], square).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = code(3, 2, 2, 9, 12);
        let text = c.to_text();
        let back = GoppaCode::from_text(&text).unwrap();
        assert_eq!(back.support(), c.support());
        assert_eq!(back.generator(), c.generator());
        assert_eq!(back.to_text(), text);
        assert!(GoppaCode::from_text("3 2 2 9\n1 0 1\n").is_err());
    }

    #[test]
    fn error_sampling() {
        let mut rng = SplitMix64::seed_from_u64(13);
        let e = ErrorPattern::sample(10, 5, 0, &MagnitudeDist::Uniform, &mut rng).unwrap();
        assert_eq!(e.weight(), 0);
        let e = ErrorPattern::sample(20, 5, 7, &MagnitudeDist::EqualRandom, &mut rng).unwrap();
        assert_eq!(e.weight(), 7);
        let profile = e.magnitude_profile();
        assert_eq!(profile.len(), 1);
        assert_eq!(profile.values().sum::<usize>(), 7);
        assert!(ErrorPattern::sample(5, 3, 6, &MagnitudeDist::Uniform, &mut rng).is_err());
        assert!(ErrorPattern::sample(5, 3, 2, &MagnitudeDist::Equal(3), &mut rng).is_err());

        let want: BTreeMap<u32, usize> = [(1, 2), (4, 3)].into();
        let e =
            ErrorPattern::sample(9, 5, 5, &MagnitudeDist::Profile(want.clone()), &mut rng).unwrap();
        assert_eq!(e.magnitude_profile(), want);
    }

    #[test]
    fn uniform_magnitudes_are_balanced() {
        // Multinomial check: each of the 4 magnitudes has mean w/4 and
        // standard deviation sqrt(w * 1/4 * 3/4).
        let mut rng = SplitMix64::seed_from_u64(14);
        let w = 1000;
        let e = ErrorPattern::sample(1000, 5, w, &MagnitudeDist::Uniform, &mut rng).unwrap();
        let sigma = (w as f64 * 0.25 * 0.75).sqrt();
        for v in 1..5 {
            let count = e.magnitude_profile().get(&v).copied().unwrap_or(0) as f64;
            assert!(
                (count - w as f64 / 4.0).abs() <= 3.0 * sigma,
                "magnitude {v}: {count}"
            );
        }
    }

    #[test]
    fn word_format() {
        assert_eq!(format_word(&[0, 2, 1]), "0 2 1");
        assert_eq!(parse_word("0 2 1\n", 3, 3).unwrap(), vec![0, 2, 1]);
        assert!(parse_word("0 3 1", 3, 3).is_err());
        assert!(parse_word("0 1", 3, 3).is_err());
    }
}
