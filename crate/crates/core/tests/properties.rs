mod common;

use common::*;
use massbound::bounds::{admissible_perturbation, f_alpha, f_alpha_general, shift_invert_spectrum, window_edge};
use massbound::linalg::{cholesky, dot, pseudo_inverse, scale, singular_values, sym_eigen, Matrix, SymmetricMatrix};
use massbound::modal::{canonicalize_left, kinetic_energy, solve_pencil};
use proptest::prelude::*;
use rand::Rng;

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigen_reconstructs_input(s in seed(), n in 1usize..=12) {
        let mut r = rng(s);
        let a = random_symmetric(&mut r, n, 10.0);
        let spec = sym_eigen(&a).unwrap();
        prop_assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
        let v = &spec.vectors;
        let vtv = v.transpose().matmul(v).unwrap();
        prop_assert!(vtv.max_abs_diff(&Matrix::identity(n)) < 1e-10);
        let recon = Matrix::from_fn(n, n, |i, j| (0..n).map(|l| spec.values[l] * v[(i, l)] * v[(j, l)]).sum());
        let norm = a.frobenius_norm().max(1e-300);
        prop_assert!(recon.max_abs_diff(&a.to_matrix()) <= 1e-8 * norm);
        for i in 0..n {
            let av = a.matvec(&spec.vector(i)).unwrap();
            let res: f64 = av.iter().zip(spec.vector(i)).map(|(x, y)| (x - spec.values[i] * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-8 * norm);
        }
    }

    #[test]
    fn eigenvalues_agree_with_nalgebra(s in seed(), n in 1usize..=10) {
        let mut r = rng(s);
        let a = random_symmetric(&mut r, n, 3.0);
        let ours = sym_eigen(&a).unwrap().values;
        let theirs = na_sym_eigenvalues(&sym_to_na(&a));
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn cholesky_reconstructs_spd(s in seed(), n in 1usize..=10) {
        let mut r = rng(s);
        let b = random_matrix(&mut r, n, n);
        let bbt = b.matmul(&b.transpose()).unwrap();
        let a = SymmetricMatrix::from_lower_fn(n, |i, j| bbt[(i, j)] + if i == j { n as f64 } else { 0.0 }).unwrap();
        let l = cholesky(&a).unwrap();
        let llt = l.to_matrix().matmul(&l.to_matrix().transpose()).unwrap();
        prop_assert!(llt.max_abs_diff(&a.to_matrix()) <= 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn singular_values_match_gram_eigenvalues(s in seed(), rows in 1usize..=8, cols in 1usize..=8) {
        let mut r = rng(s);
        let a = random_matrix(&mut r, rows, cols);
        let sv = singular_values(&a).unwrap();
        prop_assert!(sv.windows(2).all(|w| w[0] >= w[1]));
        let gram = SymmetricMatrix::symmetrize(&a.transpose().matmul(&a).unwrap()).unwrap();
        let mut eig: Vec<f64> = sym_eigen(&gram).unwrap().values.iter().map(|x| x.max(0.0).sqrt()).collect();
        eig.reverse();
        let top = sv[0].max(1e-300);
        for (x, y) in sv.iter().zip(&eig) {
            // squares agree to 1e-8 relative to sigma_1^2
            prop_assert!((x * x - y * y).abs() <= 1e-8 * top * top);
        }
    }

    #[test]
    fn pseudo_inverse_moore_penrose(s in seed(), rows in 1usize..=8, cols in 1usize..=8, rank_cut in 0usize..3) {
        let mut r = rng(s);
        let mut a = random_matrix(&mut r, rows, cols);
        // make some columns copies of the first to force rank deficiency
        for j in 1..cols.min(rank_cut + 1) {
            for i in 0..rows {
                a[(i, j)] = 2.0 * a[(i, 0)];
            }
        }
        let p = pseudo_inverse(&a).unwrap();
        prop_assert_eq!(p.shape(), (cols, rows));
        let apa = a.matmul(&p).unwrap().matmul(&a).unwrap();
        let pap = p.matmul(&a).unwrap().matmul(&p).unwrap();
        let ap = a.matmul(&p).unwrap();
        let pa = p.matmul(&a).unwrap();
        let tol = 1e-8 * (1.0 + p.max_abs()).powi(2);
        prop_assert!(apa.max_abs_diff(&a) <= tol);
        prop_assert!(pap.max_abs_diff(&p) <= tol);
        prop_assert!(ap.max_abs_diff(&ap.transpose()) <= tol);
        prop_assert!(pa.max_abs_diff(&pa.transpose()) <= tol);
    }

    #[test]
    fn pencil_modal_identities(s in seed()) {
        let mut r = rng(s);
        let sys = random_pencil(&mut r);
        let modal = solve_pencil(&sys).unwrap();
        let n = sys.dim();
        let v = modal.right();
        let vtkv = v.transpose().matmul(&sys.stiffness().matmul(v).unwrap()).unwrap();
        let lam = Matrix::from_fn(n, n, |i, j| if i == j { modal.eigenvalues()[i] } else { 0.0 });
        let scale = 1.0 + modal.eigenvalues()[n - 1];
        prop_assert!(vtkv.max_abs_diff(&lam) <= 1e-8 * scale);
        for k in 1..=n {
            let t = modal.truncate(k).unwrap();
            let gtv = t.left().transpose().matmul(t.right()).unwrap();
            prop_assert!(gtv.max_abs_diff(&Matrix::identity(k)) <= 1e-8);
        }
    }

    #[test]
    fn kinetic_energy_bounded_by_least_mass_eigenvalue(s in seed(), n in 1usize..=8) {
        let mut r = rng(s);
        let (mass, values) = random_spd(&mut r, n, 0.5, 100.0);
        let x: Vec<f64> = (0..n).map(|_| r.gen_range(-3.0..3.0)).collect();
        let ke = kinetic_energy(&mass, &x).unwrap();
        let floor = 0.5 * values[0] * dot(&x, &x);
        prop_assert!(ke >= floor - 1e-10 * (1.0 + ke.abs()));
    }

    #[test]
    fn canonicalize_removes_any_scale(s in seed(), factor in prop_oneof![-1e3..-1e-3f64, 1e-3..1e3f64]) {
        let mut r = rng(s);
        let sys = random_pencil(&mut r);
        let modal = solve_pencil(&sys).unwrap();
        let i = r.gen_range(0..modal.k());
        let v = modal.right_vector(i);
        let mv = sys.mass().matvec(&v).unwrap();
        let g = canonicalize_left(&scale(&mv, factor), &v).unwrap();
        for (a, b) in g.iter().zip(&mv) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn x_parallel_to_v_is_optimal(s in seed(), alpha in -50.0..50.0f64) {
        let mut r = rng(s);
        let sys = random_pencil(&mut r);
        let modal = solve_pencil(&sys).unwrap();
        let (g, v) = (modal.left_vector(0), modal.right_vector(0));
        let best = f_alpha(&g, &v, alpha).unwrap();
        let same = f_alpha_general(&v, &g, &v, alpha).unwrap();
        prop_assert!((best - same).abs() <= 1e-12 * best.abs().max(1.0));
        let mut x: Vec<f64> = (0..v.len()).map(|_| r.gen_range(-1.0..1.0)).collect();
        if dot(&x, &v) <= 0.0 {
            x = x.iter().map(|c| -c).collect();
        }
        if dot(&x, &v) > 1e-9 {
            let general = f_alpha_general(&x, &g, &v, alpha).unwrap();
            prop_assert!(general <= best + 1e-12 * best.abs().max(1.0));
        }
    }

    #[test]
    fn bound_is_invariant_under_joint_scaling(s in seed(), k in 0.01..100.0f64, alpha in 0.0..50.0f64) {
        let mut r = rng(s);
        let sys = random_pencil(&mut r);
        let modal = solve_pencil(&sys).unwrap();
        let (g, v) = (modal.left_vector(0), modal.right_vector(0));
        let a = f_alpha(&g, &v, alpha).unwrap();
        let b = f_alpha(&scale(&g, k), &scale(&v, k), alpha).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn tight_when_v1_is_a_mass_eigenvector(s in seed(), n in 2usize..=6, t in 0.0..1.0f64) {
        let mut r = rng(s);
        let w1 = r.gen_range(1.0..10.0);
        let w2 = w1 * r.gen_range(1.1..5.0);
        let j = r.gen_range(0..n);
        // v1 = e_j / sqrt(w1) exactly decoupled from the rest of M
        let (rest, _) = random_spd(&mut r, n - 1, w2, 3.0);
        let idx = |i: usize| if i < j { i } else { i - 1 };
        let mass = SymmetricMatrix::from_lower_fn(n, |a, b| {
            if a == j && b == j { w1 } else if a == j || b == j { 0.0 } else { rest.get(idx(a), idx(b)) }
        }).unwrap();
        let mut v = vec![0.0; n];
        v[j] = 1.0 / w1.sqrt();
        let g = mass.matvec(&v).unwrap();
        let edge = window_edge(&[w1, w2]).unwrap();
        let alpha = w1 + t * (edge - w1) * 0.999;
        let value = f_alpha(&g, &v, alpha).unwrap();
        prop_assert!((value - w1).abs() <= 1e-12 * w1);
    }

    #[test]
    fn weyl_inequalities(s in seed(), n in 1usize..=8) {
        let mut r = rng(s);
        let a = random_symmetric(&mut r, n, 5.0);
        let b = random_symmetric(&mut r, n, 5.0);
        let ea = sym_eigen(&a).unwrap().values;
        let eb = sym_eigen(&b).unwrap().values;
        let es = sym_eigen(&a.add(&b).unwrap()).unwrap().values;
        for i in 0..n {
            prop_assert!(ea[i] + eb[0] <= es[i] + 1e-9);
            prop_assert!(es[i] <= ea[i] + eb[n - 1] + 1e-9);
        }
    }

    #[test]
    fn shift_invert_matches_inverse_spectrum(s in seed(), n in 1usize..=8) {
        let mut r = rng(s);
        let (mass, values) = random_spd(&mut r, n, 1.0, 50.0);
        let spec = sym_eigen(&mass).unwrap().values;
        // a shift at least 0.1 away from every eigenvalue
        let alpha = loop {
            let a = r.gen_range(-10.0..60.0);
            if values.iter().all(|w| (w - a).abs() > 0.1) { break a; }
        };
        let inv = sym_to_na(&mass.shifted(alpha)).try_inverse().unwrap();
        let inv = SymmetricMatrix::symmetrize(&from_na(&inv)).unwrap();
        let got = sym_eigen(&inv).unwrap().values;
        let mut expected = shift_invert_spectrum(&spec, alpha).unwrap();
        expected.sort_by(f64::total_cmp);
        for (x, y) in got.iter().zip(&expected) {
            prop_assert!((x - y).abs() <= 1e-8 * y.abs().max(1.0));
        }
    }

    #[test]
    fn admissibility_is_monotone_in_bound(s in seed(), n in 1usize..=6, l1 in 0.0..20.0f64, dl in 0.0..20.0f64) {
        let mut r = rng(s);
        let dm = random_symmetric(&mut r, n, 10.0);
        let lo = admissible_perturbation(l1, &dm).unwrap();
        let hi = admissible_perturbation(l1 + dl, &dm).unwrap();
        prop_assert!(hi.margin >= lo.margin);
        prop_assert!(!lo.admissible || hi.admissible);
    }

    #[test]
    fn admissible_perturbations_stay_positive_definite(s in seed(), n in 1usize..=6) {
        let mut r = rng(s);
        let (mass, values) = random_spd(&mut r, n, 1.0, 20.0);
        let dm = random_symmetric(&mut r, n, 2.0);
        let lower = values[0] * r.gen_range(0.1..1.0);
        let verdict = admissible_perturbation(lower, &dm).unwrap();
        if verdict.admissible {
            let least = sym_eigen(&mass.add(&dm).unwrap()).unwrap().values[0];
            prop_assert!(least > 0.0);
            prop_assert!(cholesky(&mass.add(&dm).unwrap()).is_ok());
        }
    }
}

