use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{PartColoring, QuotientMatrix};

/// Grouping / comparison tolerance for numerically computed eigenvalues.
pub const SPECTRUM_TOLERANCE: f64 = 1e-6;

/// Eigenvalues with multiplicity, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tolerance: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, tolerance: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, tolerance }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Distinct eigenvalues (within tolerance) with multiplicities.
    pub fn grouped(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((_, mult, last)) if (*last - v).abs() <= self.tolerance => {
                    *mult += 1;
                    *last = v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter().map(|(v, m, _)| (v, m)).collect()
    }

    /// First sorted position where the two spectra differ by more than the
    /// tolerance; `Some((len_min, ..))` with NaNs if the lengths differ.
    pub fn first_difference(&self, other: &Spectrum) -> Option<(usize, f64, f64)> {
        let tol = self.tolerance.max(other.tolerance);
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if (a - b).abs() > tol {
                return Some((i, *a, *b));
            }
        }
        if self.len() != other.len() {
            let i = self.len().min(other.len());
            return Some((i, f64::NAN, f64::NAN));
        }
        None
    }

    pub fn approx_eq(&self, other: &Spectrum) -> bool {
        self.first_difference(other).is_none()
    }

    /// For each eigenvalue, the index of a candidate within tolerance.
    pub fn match_against(&self, candidates: &[i64]) -> Option<Vec<usize>> {
        self.values
            .iter()
            .map(|&v| {
                candidates
                    .iter()
                    .position(|&c| (c as f64 - v).abs() <= self.tolerance)
            })
            .collect()
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            value: f64,
            multiplicity: usize,
        }
        let entries: Vec<Entry> = self
            .grouped()
            .into_iter()
            .map(|(v, m)| Entry {
                value: round_for_display(v),
                multiplicity: m,
            })
            .collect();
        entries.serialize(serializer)
    }
}

fn round_for_display(v: f64) -> f64 {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Eigenvalues of a quotient matrix. Symmetric input uses the symmetric
/// solver; otherwise the real parts of the Schur eigenvalues are returned
/// (quotients of perfect colorings have real spectra).
pub fn quotient_spectrum(q: &QuotientMatrix) -> Spectrum {
    let m = q.dim();
    let mat = DMatrix::from_fn(m, m, |i, j| f64::from(q.get(i, j)));
    let values = if q.is_symmetric() {
        mat.symmetric_eigen().eigenvalues.iter().copied().collect()
    } else {
        mat.complex_eigenvalues().iter().map(|z| z.re).collect()
    };
    Spectrum::from_values(values, SPECTRUM_TOLERANCE)
}

/// Adjacency matrix of the subgraph induced by `part`, rows in canonical
/// vertex order.
pub fn induced_adjacency(c: &PartColoring, part: usize) -> Vec<Vec<i64>> {
    let g = c.graph();
    let members: Vec<usize> = c.part_indices(part).collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (r, &i) in members.iter().enumerate() {
        pos[i] = r;
    }
    let mut adj = vec![vec![0i64; members.len()]; members.len()];
    for (r, &i) in members.iter().enumerate() {
        for &j in g.neighbor_indices(i) {
            let s = pos[j as usize];
            if s != usize::MAX {
                adj[r][s] = 1;
            }
        }
    }
    adj
}

/// Adjacency spectrum of the subgraph induced by `part`.
pub fn induced_subgraph_spectrum(c: &PartColoring, part: usize) -> Spectrum {
    let adj = induced_adjacency(c, part);
    let n = adj.len();
    let mat = DMatrix::from_fn(n, n, |i, j| adj[i][j] as f64);
    let values = mat.symmetric_eigen().eigenvalues.iter().copied().collect();
    Spectrum::from_values(values, SPECTRUM_TOLERANCE)
}

/// Exact coefficients of `det(xI - A)`, lowest degree first.
///
/// Computed modulo enough 62-bit primes to cover the bound
/// `|coeff| ≤ (1 + ρ)^n` (ρ = max absolute row sum), then lifted by CRT to
/// the symmetric residue range.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    let rho = a
        .iter()
        .map(|r| r.iter().map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let bits = (n as f64) * ((1 + rho) as f64).log2() + 2.0;
    let count = (bits / 61.0).ceil() as usize + 1;

    let mut value: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut modulus = BigInt::one();
    for p in primes_below(1u64 << 62).take(count) {
        let residues = charpoly_mod(a, p);
        let pb = BigInt::from(p);
        let m_mod_p = (&modulus % &pb).to_u64().expect("residue fits in u64");
        let inv = mod_pow(m_mod_p, p - 2, p);
        for (c, &r) in value.iter_mut().zip(&residues) {
            let cur = (&*c % &pb).to_u64().expect("residue fits in u64");
            let t = mul_mod((r + p - cur) % p, inv, p);
            *c += &modulus * BigInt::from(t);
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    for c in &mut value {
        if *c > half {
            *c -= &modulus;
        }
        debug_assert!(c.abs() <= half);
    }
    value
}

fn charpoly_mod(a: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();

    // Similarity reduction to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = mod_pow(h[j + 1][j], p - 2, p);
        for i in j + 2..n {
            let u = mul_mod(h[i][j], inv, p);
            if u == 0 {
                continue;
            }
            let (top, bottom) = h.split_at_mut(i);
            for (x, &y) in bottom[0].iter_mut().zip(&top[j + 1]) {
                *x = (*x + p - mul_mod(u, y, p)) % p;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + mul_mod(u, row[i], p)) % p;
            }
        }
    }

    // polys[m] = charpoly of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let diag = h[m - 1][m - 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(diag, c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = mul_mod(prod, h[i][i - 1], p);
            let coef = mul_mod(h[i - 1][m - 1], prod, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &w in &WITNESSES {
        let mut x = mod_pow(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes_below(limit: u64) -> impl Iterator<Item = u64> {
    (3..limit).rev().step_by(2).filter(|&x| is_prime(x))
}
