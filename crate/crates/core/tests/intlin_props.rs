use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use reptor::intlin::{
    hermite_normal_form, is_direct_summand, lattice_intersect, lattice_sum, quotient_invariants,
    smith_normal_form, IntMatrix, Sublattice,
};

fn matrix(rows: Vec<Vec<i64>>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, &rows).unwrap()
}

fn arb_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(move |(m, n)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, n), m)
            .prop_map(move |rows| matrix(rows, n))
    })
}

fn arb_lattice(r: usize) -> impl Strategy<Value = Sublattice> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, r), 0..=r + 1)
        .prop_map(move |rows| Sublattice::from_generators(&matrix(rows, r)))
}

fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors, for k = 1..=min(m, n).
fn determinantal_divisors(a: &[Vec<i64>], n: usize) -> Vec<i128> {
    let m = a.len();
    (1..=m.min(n))
        .map(|k| {
            let mut g = 0i128;
            for rs in subsets(m, k) {
                for cs in subsets(n, k) {
                    let minor: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                        .collect();
                    g = g.gcd(&det(&minor));
                }
            }
            g
        })
        .collect()
}

fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

fn is_diagonal(d: &IntMatrix) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d.row(i)[j].is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_identities(a in arb_matrix(5, 5, 9)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert!(is_diagonal(&s.d));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let diag_len = a.rows().min(a.cols());
        prop_assert!((f.len()..diag_len).all(|i| s.d.row(i)[i].is_zero()));
    }

    #[test]
    fn smith_matches_determinantal_divisors(a in arb_matrix(4, 4, 6)) {
        let f = smith_normal_form(&a).invariant_factors();
        let dk = determinantal_divisors(&to_i64(&a), a.cols());
        let mut prod = BigInt::from(1);
        for (k, d) in dk.iter().enumerate() {
            if *d == 0 {
                prop_assert_eq!(f.len(), k);
                break;
            }
            prod *= &f[k];
            prop_assert_eq!(&prod, &BigInt::from(*d));
        }
    }

    #[test]
    fn hermite_identities(a in arb_matrix(5, 5, 9)) {
        let (h, u) = hermite_normal_form(&a);
        prop_assert!(u.is_unimodular());
        let ua = u.mul(&a).unwrap();
        for i in 0..a.rows() {
            let expected: Vec<BigInt> = if i < h.rows() { h.row(i).to_vec() } else { vec![BigInt::zero(); a.cols()] };
            prop_assert_eq!(ua.row(i), &expected[..]);
        }
        prop_assert_eq!(h.rows(), a.rank());
        let mut last_pivot = None;
        for i in 0..h.rows() {
            let p = h.row(i).iter().position(|x| !x.is_zero()).unwrap();
            prop_assert!(last_pivot.is_none_or(|q| p > q));
            last_pivot = Some(p);
            let pivot = &h.row(i)[p];
            prop_assert!(pivot.is_positive());
            for above in 0..i {
                let x = &h.row(above)[p];
                prop_assert!(!x.is_negative() && x < pivot);
            }
        }
    }

    #[test]
    fn hermite_is_canonical(a in arb_matrix(4, 4, 9), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)) {
        let mut rows = to_i64(&a);
        let m = rows.len();
        for (i, j, c) in ops {
            if m > 0 && i % m != j % m {
                let src = rows[j % m].clone();
                for (x, y) in rows[i % m].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
        }
        if m > 1 {
            rows.swap(0, m - 1);
        }
        let b = matrix(rows, a.cols());
        prop_assert_eq!(hermite_normal_form(&a).0, hermite_normal_form(&b).0);
    }

    #[test]
    fn sum_intersection_rank_identity(k1 in arb_lattice(3), k2 in arb_lattice(3)) {
        let s = lattice_sum(&k1, &k2).unwrap();
        let i = lattice_intersect(&k1, &k2).unwrap();
        prop_assert_eq!(k1.rank() + k2.rank(), s.rank() + i.rank());
    }

    #[test]
    fn sum_and_intersection_laws(k1 in arb_lattice(3), k2 in arb_lattice(3), k3 in arb_lattice(3)) {
        prop_assert_eq!(lattice_sum(&k1, &k2).unwrap(), lattice_sum(&k2, &k1).unwrap());
        prop_assert_eq!(lattice_intersect(&k1, &k2).unwrap(), lattice_intersect(&k2, &k1).unwrap());
        prop_assert_eq!(
            lattice_sum(&lattice_sum(&k1, &k2).unwrap(), &k3).unwrap(),
            lattice_sum(&k1, &lattice_sum(&k2, &k3).unwrap()).unwrap()
        );
        prop_assert_eq!(
            lattice_intersect(&lattice_intersect(&k1, &k2).unwrap(), &k3).unwrap(),
            lattice_intersect(&k1, &lattice_intersect(&k2, &k3).unwrap()).unwrap()
        );
        let s = lattice_sum(&k1, &k2).unwrap();
        let i = lattice_intersect(&k1, &k2).unwrap();
        prop_assert!(s.contains(&k1) && s.contains(&k2));
        prop_assert!(k1.contains(&i) && k2.contains(&i));
        // monotone: k1 ⊆ k1 + k3 gives k1 + k2 ⊆ (k1 + k3) + k2
        let bigger = lattice_sum(&k1, &k3).unwrap();
        prop_assert!(lattice_sum(&bigger, &k2).unwrap().contains(&s));
        prop_assert!(lattice_intersect(&bigger, &k2).unwrap().contains(&i));
    }

    #[test]
    fn quotient_order_is_index(k in arb_lattice(3)) {
        let q = quotient_invariants(3, &k).unwrap();
        prop_assert_eq!(q.free_rank, 3 - k.rank());
        if k.rank() == 3 {
            let d = k.basis().determinant().unwrap().abs();
            prop_assert_eq!(q.order(), Some(d));
        }
        prop_assert_eq!(is_direct_summand(&k), q.torsion.is_empty());
        prop_assert!(is_direct_summand(&k.saturation()));
        prop_assert!(k.saturation().contains(&k));
    }
}
