use vecg::bimodcats::{enumerate_brpic, identify, BrPicElement};
use vecg::crossed::tensor_and_compose;
use vecg::{cyclic_3cocycle, Cochain, FiniteGroup};

fn product_table(els: &[BrPicElement]) -> Vec<Vec<usize>> {
    els.iter()
        .map(|a| {
            els.iter()
                .map(|b| {
                    let c = tensor_and_compose(&a.data, &b.data).unwrap();
                    let m = c.bimodule.expect("invertible composites are indecomposable");
                    identify(els, &m).unwrap().expect("composite is invertible")
                })
                .collect()
        })
        .collect()
}

fn assert_group(t: &[Vec<usize>]) {
    let n = t.len();
    for i in 0..n {
        assert_eq!(t[0][i], i);
        assert_eq!(t[i][0], i);
        let mut row = t[i].clone();
        row.sort_unstable();
        assert_eq!(row, (0..n).collect::<Vec<_>>());
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                assert_eq!(t[t[a][b]][c], t[a][t[b][c]]);
            }
        }
    }
}

#[test]
fn brpic_tables_are_groups() {
    let z3 = FiniteGroup::cyclic(3);
    let t = product_table(&enumerate_brpic(&z3, &Cochain::zero(3, 3)).unwrap());
    assert_eq!(t.len(), 4);
    assert_group(&t);
    // O(Z/3 ⊕ Z/3) with the hyperbolic form is a Klein four group.
    assert!((0..4).all(|i| t[i][i] == 0));

    let z4 = FiniteGroup::cyclic(4);
    for k in [0, 1, 2] {
        let w = cyclic_3cocycle(4, k);
        let t = product_table(&enumerate_brpic(&z4, &w).unwrap());
        assert_group(&t);
        assert_eq!(t.len(), if k == 1 { 2 } else { 4 });
    }
}

#[test]
fn opposite_is_inverse() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let els = enumerate_brpic(&s3, &Cochain::zero(6, 3)).unwrap();
    assert_eq!(els.len(), 2);
    for e in &els {
        let op = e.data.opposite().unwrap();
        let c = tensor_and_compose(&e.data, &op).unwrap();
        assert_eq!(identify(&els, c.bimodule.as_ref().unwrap()).unwrap(), Some(0));
        assert!(c.pairing().is_some());
    }
}

#[test]
fn left_translation_is_a_bijection() {
    let z2 = FiniteGroup::cyclic(2);
    let v = FiniteGroup::direct_product(&z2, &z2);
    let els = enumerate_brpic(&v, &Cochain::zero(4, 3)).unwrap();
    assert_eq!(els.len(), 72);
    let mut img: Vec<usize> = els
        .iter()
        .map(|b| {
            let c = tensor_and_compose(&els[41].data, &b.data).unwrap();
            identify(&els, c.bimodule.as_ref().unwrap()).unwrap().unwrap()
        })
        .collect();
    img.sort_unstable();
    img.dedup();
    assert_eq!(img.len(), 72);
}
