use std::sync::Arc;

use proptest::prelude::*;

use tautilt::algebra::{opposite_arc, Algebra};
use tautilt::exactlin::{Mat, Scalar};
use tautilt::fixtures;
use tautilt::homology::{dtr, ext_dim, g_vector, proj_sum, tau, ProjMap};
use tautilt::rep::{
    decompose, hom_dim, induction, is_indecomposable, is_isomorphic, restriction, Representation,
};
use tautilt::tau::{gen_membership, indec_tau_rigid, torsion_parts, SupportTauRigidObject};
use tautilt::wide::jasso_reduction;

fn alg(name: &str) -> Arc<Algebra> {
    Arc::new(fixtures::by_name(name).unwrap())
}

/// A module given as the cokernel of a map between sums of projectives.
#[derive(Clone, Debug)]
struct Presentation {
    src: Vec<usize>,
    tgt: Vec<usize>,
    coords: Vec<i64>,
}

impl Presentation {
    fn module(&self, a: &Arc<Algebra>) -> Representation {
        let n = ProjMap::hom_dim(a, &self.src, &self.tgt);
        let coords: Vec<Scalar> = (0..n)
            .map(|i| Scalar::from(self.coords[i % self.coords.len()]))
            .collect();
        let d = ProjMap::from_coords(a, &self.src, &self.tgt, &coords);
        d.to_morphism().cokernel(&proj_sum(a, &self.tgt)).unwrap().0
    }
}

fn presentation(
    n_vertices: usize,
    max_src: usize,
    max_tgt: usize,
) -> impl Strategy<Value = Presentation> {
    (
        prop::collection::vec(0..n_vertices, 0..=max_src),
        prop::collection::vec(0..n_vertices, 1..=max_tgt),
        prop::collection::vec(-2i64..=2, 1..12),
    )
        .prop_map(|(src, tgt, coords)| Presentation { src, tgt, coords })
}

/// Unitriangular factors give an invertible integer matrix.
fn invertible(n: usize, seed: &[i64]) -> Mat {
    let mut l = Mat::identity(n);
    let mut u = Mat::identity(n);
    let mut it = seed.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Scalar::from(*it.next().unwrap()));
            u.set(j, i, Scalar::from(*it.next().unwrap()));
        }
    }
    l.mul(&u)
}

fn change_basis(m: &Representation, seed: &[i64]) -> Representation {
    let a = m.algebra();
    let t: Vec<Mat> = m
        .dims()
        .iter()
        .enumerate()
        .map(|(v, &d)| invertible(d, &seed[v % seed.len()..]))
        .collect();
    let maps = (0..a.n_arrows())
        .map(|i| {
            let ar = a.arrow(i);
            t[ar.tgt].mul(m.map(i)).mul(&t[ar.src].inverse().unwrap())
        })
        .collect();
    Representation::new(a, m.dims().to_vec(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_agrees_with_dtr(p in presentation(3, 2, 2), which in 0usize..3) {
        let a = alg(["a3", "a3-rad2", "a2-dual-numbers"][which]);
        let p = Presentation { src: p.src.into_iter().filter(|&v| v < a.n_vertices()).collect(),
            tgt: p.tgt.iter().map(|&v| v % a.n_vertices()).collect(), coords: p.coords };
        let m = p.module(&a);
        prop_assert!(is_isomorphic(&tau(&m).unwrap(), &dtr(&m).unwrap()));
    }

    #[test]
    fn isomorphism_survives_base_change(p in presentation(3, 2, 2), seed in prop::collection::vec(-2i64..=2, 1..8)) {
        let a = alg("a3-rad2");
        let m = p.module(&a);
        let n = change_basis(&m, &seed);
        prop_assert!(is_isomorphic(&m, &n));
        prop_assert_eq!(hom_dim(&m, &m), hom_dim(&n, &n));
        prop_assert_eq!(g_vector(&m).unwrap(), g_vector(&n).unwrap());
    }

    #[test]
    fn double_dual_is_identity(p in presentation(2, 2, 2)) {
        let a = alg("a2-dual-numbers");
        let op = opposite_arc(&a);
        let m = p.module(&a);
        let back = m.dual(&op).unwrap().dual(&a).unwrap();
        prop_assert!(is_isomorphic(&m, &back));
    }

    #[test]
    fn auslander_reiten_formula_on_hereditary(p in presentation(3, 2, 2), q in presentation(3, 2, 2)) {
        let a = alg("a3");
        let m = p.module(&a);
        let n = q.module(&a);
        prop_assert_eq!(ext_dim(1, &m, &n).unwrap(), hom_dim(&n, &tau(&m).unwrap()));
    }

    #[test]
    fn induction_scales_hom_and_ext(p in presentation(2, 2, 2), q in presentation(2, 2, 2)) {
        let lam = alg("example-7");
        let a = lam.provenance().unwrap().base.clone();
        let r = lam.provenance().unwrap().local.dim();
        let m = p.module(&a);
        let n = q.module(&a);
        let im = induction(&lam, &m).unwrap();
        let inn = induction(&lam, &n).unwrap();
        prop_assert_eq!(hom_dim(&im, &inn), r * hom_dim(&m, &n));
        prop_assert_eq!(ext_dim(1, &im, &inn).unwrap(), r * ext_dim(1, &m, &n).unwrap());
        prop_assert_eq!(g_vector(&im).unwrap(), g_vector(&m).unwrap());
        prop_assert!(is_isomorphic(&restriction(&im).unwrap(), &m.power(r)));
    }

    #[test]
    fn torsion_pair_splits_modules(p in presentation(2, 2, 2), k in 0usize..3) {
        let lam = alg("a2-dual-numbers");
        let rigid = indec_tau_rigid(&lam).unwrap();
        let m = &rigid[k % rigid.len()];
        let x = p.module(&lam);
        let tp = torsion_parts(m, &x).unwrap();
        prop_assert!(tp.t.is_zero() || gen_membership(m, &tp.t).unwrap());
        prop_assert_eq!(hom_dim(m, &tp.f), 0);
        let sum: Vec<usize> = tp.t.dims().iter().zip(tp.f.dims()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum, x.dims().to_vec());
    }

    #[test]
    fn decomposition_reassembles(p in presentation(3, 2, 3)) {
        let a = alg("a3-rad2");
        let m = p.module(&a);
        let d = decompose(&m).unwrap();
        for part in &d.parts {
            prop_assert!(is_indecomposable(part).unwrap().absolutely());
        }
        prop_assert!(is_isomorphic(&Representation::sum(&a, &d.parts), &m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wide_equivalence_round_trips(k in 0usize..3, src in 0usize..3, coords in prop::collection::vec(-2i64..=2, 1..8)) {
        let lam = alg("example-7");
        let rigid = indec_tau_rigid(&lam).unwrap();
        let w = jasso_reduction(&lam, &SupportTauRigidObject { m: vec![rigid[k].clone()], p: vec![] }).unwrap();
        let g = w.gamma().clone();
        let y = Presentation { src: vec![0; src], tgt: vec![0], coords }.module(&g);
        let x = w.f_inverse(&y).unwrap();
        prop_assert!(w.contains(&x).unwrap());
        prop_assert!(is_isomorphic(&w.g(&x).unwrap(), &y));
    }
}
