mod common;

use common::{heisenberg, homogeneous, invertible_map, ns};
use homlie_core::deriv::solve_class;
use homlie_core::format::{write_algebra, write_basis};
use homlie_core::{AlgebraFile, Bounds, BracketTable, ConformalAlgebra, DerClass, LambdaContext};
use proptest::prelude::*;

fn table() -> impl Strategy<Value = BracketTable> {
    let m = ns().module().clone();
    let c = LambdaContext::new(["l"]).unwrap();
    let n = m.rank();
    let cells: Vec<_> = (0..n * n).map(|k| homogeneous(m.clone(), c.clone(), m.parity(k / n) + m.parity(k % n))).collect();
    cells.prop_map(move |es| BracketTable::from_entries(&m, &c, es.chunks(n).map(|r| r.to_vec()).collect()).unwrap())
}

fn statuses(a: &ConformalAlgebra) -> Vec<bool> {
    a.axiom_suite().iter().map(|r| r.passed()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn algebras_round_trip(t in table(), alpha in invertible_map(ns().module().clone())) {
        let a = ConformalAlgebra::new(alpha, t).unwrap();
        let back = AlgebraFile::parse(&write_algebra(&a)).unwrap().algebra;
        prop_assert_eq!(back.table(), a.table());
        prop_assert_eq!(back.alpha(), a.alpha());
        prop_assert_eq!(statuses(&back), statuses(&a));
    }
}

#[test]
fn bases_round_trip() {
    let h = heisenberg();
    let text = write_algebra(&h);
    for class in DerClass::ALL {
        let b = solve_class(&h, class, 1, Bounds::new(1, 0)).unwrap();
        let file = AlgebraFile::parse(&text).unwrap().extend(&write_basis(&b)).unwrap();
        let back = file.solution_basis().unwrap();
        assert_eq!(back.class, b.class);
        assert_eq!((back.k, back.bounds), (b.k, b.bounds));
        assert_eq!(back.vectors(), b.vectors());
        for (x, y) in back.basis.iter().zip(&b.basis) {
            assert_eq!(x.companions.len(), y.companions.len());
            for (p, q) in x.companions.iter().zip(&y.companions) {
                assert!(p.same_as(q));
            }
            let status = homlie_core::deriv::class_check(&file.algebra, x).unwrap().passed();
            assert_eq!(status, homlie_core::deriv::class_check(&h, y).unwrap().passed());
        }
    }
}
