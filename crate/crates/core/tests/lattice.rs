use proptest::prelude::*;
use zca::{hnf, GroupElement, Index, Lattice};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn divisor_sum(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

proptest! {
    #[test]
    fn rank_one_lattice_is_gcd(a in -40i64..40, b in -40i64..40, c in -40i64..40) {
        let l = hnf(1, &[GroupElement::scalar(a), GroupElement::scalar(b), GroupElement::scalar(c)]).unwrap();
        let g = gcd(gcd(a, b), c);
        if g == 0 {
            prop_assert_eq!(l.rank(), 0);
        } else {
            prop_assert_eq!(l.index(), Index::Finite(g as u64));
        }
    }

    #[test]
    fn planar_index_is_determinant(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, k in -3i64..3) {
        let det = (a * d - b * c).abs();
        prop_assume!(det != 0);
        let u = GroupElement(vec![a, b]);
        let v = GroupElement(vec![c, d]);
        // Adding a multiple of one generator to the other leaves the lattice unchanged.
        let w = GroupElement(vec![c + k * a, d + k * b]);
        let l = hnf(2, &[u.clone(), v.clone()]).unwrap();
        prop_assert_eq!(l.index(), Index::Finite(det as u64));
        prop_assert_eq!(&hnf(2, &[v.clone(), u.clone()]).unwrap(), &l);
        prop_assert_eq!(&hnf(2, &[u.clone(), w, v.clone()]).unwrap(), &l);
        prop_assert!(l.contains(&u).unwrap() && l.contains(&v).unwrap());
    }

    #[test]
    fn cosets_partition_the_box(a in 1i64..6, b in 0i64..6, d in 1i64..6, x in -30i64..30, y in -30i64..30) {
        let l = Lattice::from_columns(2, &[vec![a, b], vec![0, d]]).unwrap();
        let table = l.cosets().unwrap();
        prop_assert_eq!(table.size() as i64, a * d);
        for (i, r) in table.reps().iter().enumerate() {
            prop_assert_eq!(table.index_of(r).unwrap(), i);
        }
        let g = GroupElement(vec![x, y]);
        let r = table.reduce(&g).unwrap();
        prop_assert!(l.contains(&g.checked_sub(&r).unwrap()).unwrap());
        prop_assert_eq!(table.reduce(&r).unwrap(), r);
    }

    #[test]
    fn coordinates_invert_point(a in 1i64..6, b in -5i64..6, d in 1i64..6, s in -20i64..20, t in -20i64..20) {
        let l = Lattice::from_columns(2, &[vec![a, b], vec![0, d]]).unwrap();
        let p = l.point(&[s, t]).unwrap();
        prop_assert_eq!(l.coordinates(&p).unwrap(), Some(vec![s, t]));
        let iso = l.snf_isomorphism();
        prop_assert_eq!(iso.backward(&iso.forward(&p).unwrap()).unwrap(), p);
    }
}

#[test]
fn sublattice_counts() {
    for n in 1..=12u64 {
        assert_eq!(Lattice::all_of_index(1, n).unwrap().len(), 1);
        let all = Lattice::all_of_index(2, n).unwrap();
        assert_eq!(all.len() as u64, divisor_sum(n), "index {n}");
        assert!(all.iter().all(|l| l.index() == Index::Finite(n)));
    }
}

#[test]
fn rank_deficient_lattice_has_no_cosets() {
    let l = Lattice::from_columns(2, &[vec![1, 1]]).unwrap();
    assert_eq!(l.index(), Index::Infinite);
    assert!(l.cosets().is_err());
}
