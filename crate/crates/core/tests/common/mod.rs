#![allow(dead_code)]

use massbound::{Matrix, MassStiffnessSystem, SymmetricMatrix};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn sym_to_na(m: &SymmetricMatrix) -> DMatrix<f64> {
    to_na(&m.to_matrix())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Ascending eigenvalues from nalgebra's symmetric solver.
pub fn na_sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, scale: f64) -> SymmetricMatrix {
    SymmetricMatrix::from_lower_fn(n, |_, _| scale * rng.gen_range(-1.0..1.0)).unwrap()
}

/// Orthogonal matrix from modified Gram-Schmidt on a random matrix.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let a = random_matrix(rng, n, n);
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = a.column(j);
            for q in &cols {
                let d: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            cols.push(v);
        }
        if ok {
            return Matrix::from_columns(&cols).unwrap();
        }
    }
}

/// `Q diag(values) Q^T`, symmetrized.
pub fn with_spectrum(q: &Matrix, values: &[f64]) -> SymmetricMatrix {
    let n = values.len();
    SymmetricMatrix::from_lower_fn(n, |i, j| (0..n).map(|l| q[(i, l)] * values[l] * q[(j, l)]).sum()).unwrap()
}

/// SPD matrix with eigenvalues log-uniform in `[lo, lo * cond]`.
pub fn random_spd(rng: &mut impl Rng, n: usize, lo: f64, cond: f64) -> (SymmetricMatrix, Vec<f64>) {
    let q = random_orthogonal(rng, n);
    let mut values: Vec<f64> = (0..n)
        .map(|_| lo * cond.powf(rng.gen_range(0.0..1.0)))
        .collect();
    values[0] = lo;
    if n > 1 {
        values[1] = lo * cond;
    }
    values.sort_by(f64::total_cmp);
    (with_spectrum(&q, &values), values)
}

/// Random SPD pencil, `n` in `2..=8`, mass condition number at most `1e4`.
pub fn random_pencil(rng: &mut impl Rng) -> MassStiffnessSystem {
    let n = rng.gen_range(2..=8);
    random_pencil_n(rng, n)
}

pub fn random_pencil_n(rng: &mut impl Rng, n: usize) -> MassStiffnessSystem {
    let cond = 10f64.powf(rng.gen_range(0.0..4.0));
    let lo = rng.gen_range(0.5..5.0);
    let (mass, _) = random_spd(rng, n, lo, cond);
    let (k_lo, k_cond) = (rng.gen_range(1.0..10.0), rng.gen_range(1.0..100.0));
    let (stiffness, _) = random_spd(rng, n, k_lo, k_cond);
    MassStiffnessSystem::new(mass, stiffness).unwrap()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = row[c] / pivot[c];
            row.iter_mut().zip(&pivot).skip(c).for_each(|(x, p)| *x -= f * p);
        }
    }
    det
}

/// Pencil eigenvalues found by scanning `det(K - lambda M)` for sign
/// changes on a uniform grid and bisecting each bracket.
pub fn det_scan_eigenvalues(sys: &MassStiffnessSystem, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let k = sys.stiffness().to_matrix();
    let m = sys.mass().to_matrix();
    let f = |lambda: f64| determinant(&k.sub(&m.scaled(lambda)).unwrap());
    let mut roots = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = lo + h * i as f64;
        let fb = f(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (x0 + x1);
                let fm = f(mid);
                if fm == 0.0 {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if fm.signum() == f0.signum() {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    roots
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
