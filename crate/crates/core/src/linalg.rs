//! Dense linear algebra over the prime field `F_p`.

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> FpMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                acc as u32
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let p = self.p as u64;
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = ((*v as u64 * c as u64) % p) as u32;
        }
    }

    /// `row[dst] -= c * row[src]`
    fn axpy_rows(&mut self, dst: usize, src: usize, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let neg = (p - c as u64) % p;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j] as u64;
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = ((*d as u64 + neg * s) % p) as u32;
            }
        }
    }

    /// Reduced row echelon form, recording the row operations applied.
    pub fn echelon(&self) -> Echelon {
        let mut r = self.clone();
        let mut t = FpMatrix::identity(self.p, self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| r.get(i, col) != 0) else {
                continue;
            };
            r.swap_rows(row, piv);
            t.swap_rows(row, piv);
            let inv = inv_mod_p(r.get(row, col), self.p);
            r.scale_row(row, inv);
            t.scale_row(row, inv);
            for i in 0..self.rows {
                if i != row {
                    let c = r.get(i, col);
                    if c != 0 {
                        r.axpy_rows(i, row, c);
                        t.axpy_rows(i, row, c);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon {
            reduced: r,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of the right null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (i, &pc) in ech.pivots.iter().enumerate() {
                    let a = ech.reduced.get(i, fc);
                    v[pc] = (self.p - a) % self.p;
                }
                v
            })
            .collect()
    }
}

/// Result of Gauss-Jordan elimination: `transform * original = reduced`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FpMatrix,
    pub transform: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    /// Some solution of `A x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let y = self.transform.mul_vec(b);
        let rank = self.pivots.len();
        if y[rank..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u32; self.reduced.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = y[i];
        }
        Some(x)
    }
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut e = p as u64 - 2;
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Uniform random combination of the given basis vectors.
pub fn random_combination<R: Rng + ?Sized>(
    basis: &[Vec<u32>],
    len: usize,
    p: u32,
    rng: &mut R,
) -> Vec<u32> {
    let mut out = vec![0u64; len];
    for b in basis {
        let c = rng.random_range(0..p) as u64;
        if c == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(b) {
            *o = (*o + c * v as u64) % p as u64;
        }
    }
    out.into_iter().map(|v| v as u32).collect()
}
