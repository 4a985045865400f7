mod common;

use proptest::prelude::*;
use syzygy_core::laurent::LaurentPoly;
use syzygy_core::linalg::Matrix;

fn matrix() -> impl Strategy<Value = (u32, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..7, 1usize..7).prop_flat_map(|(p, r, c)| {
        let rows = prop::collection::vec(prop::collection::vec(0..p as i64, c), r);
        (Just(p), rows)
    })
}

proptest! {
    #[test]
    fn kernel_is_annihilated((p, rows) in matrix()) {
        let m = Matrix::from_rows(p, &rows).unwrap();
        let k = m.kernel_basis();
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert_eq!(m.rank(), common::rank(&rows, p));
    }

    #[test]
    fn rref_is_idempotent((p, rows) in matrix()) {
        let m = Matrix::from_rows(p, &rows).unwrap();
        let once = m.row_reduce();
        let twice = once.rref.row_reduce();
        prop_assert_eq!(&once.rref, &twice.rref);
        prop_assert_eq!(once.pivot_columns, twice.pivot_columns);
    }

    #[test]
    fn solutions_are_exact((p, rows) in matrix(), seed in any::<u64>()) {
        let m = Matrix::from_rows(p, &rows).unwrap();
        let b: Vec<u32> = (0..m.rows()).map(|i| ((seed >> (i % 60)) % p as u64) as u32).collect();
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul_vec(&x), b);
        }
        let reachable = m.mul_vec(&vec![1; m.cols()]);
        let x = m.solve(&reachable).unwrap().expect("image vector is solvable");
        prop_assert_eq!(m.mul_vec(&x), reachable);
    }

    #[test]
    fn inverse_round_trip((p, rows) in matrix()) {
        let m = Matrix::from_rows(p, &rows).unwrap();
        if m.is_square() {
            match m.inverse().unwrap() {
                Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(p, m.rows())),
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }

    #[test]
    fn laurent_ring_laws(
        a in prop::collection::vec((-4i32..5, -3i64..4), 0..5),
        b in prop::collection::vec((-4i32..5, -3i64..4), 0..5),
        k in -3i32..4,
    ) {
        let f = LaurentPoly::from_terms(a);
        let g = LaurentPoly::from_terms(b);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&f * &LaurentPoly::t_pow(k), f.shift(k));
        if !g.is_zero() {
            prop_assert_eq!((&f * &g).exact_div(&g), Some(f.clone()));
        }
        prop_assert!(f.terms().all(|(_, c)| c != 0));
    }
}
