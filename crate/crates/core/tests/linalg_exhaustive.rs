use simplex_ghw::linalg::{dot, enumerate_subspaces, Subspace};
use simplex_ghw::{Field, Limits};

fn all(field: &Field, m: usize) -> Vec<Subspace> {
    let limits = Limits::default();
    (0..=m)
        .flat_map(|r| enumerate_subspaces(field, m, r, &limits).unwrap())
        .collect()
}

#[test]
fn dual_is_an_involution_and_orthogonal() {
    let gf2 = Field::prime(2).unwrap();
    for m in 0..=5 {
        for s in all(&gf2, m) {
            let d = s.dual(&gf2);
            assert_eq!(d.dim(), m - s.dim());
            assert_eq!(d.dual(&gf2), s);
            for a in s.basis().row_iter() {
                assert!(d.basis().row_iter().all(|b| dot(&gf2, a, b).is_zero()));
            }
        }
    }
}

#[test]
fn enumerated_subspaces_have_the_requested_dimension() {
    let limits = Limits::default();
    for q in [2u64, 3] {
        let field = Field::prime(q).unwrap();
        for m in 0..=6 {
            for r in 0..=m {
                for s in enumerate_subspaces(&field, m, r, &limits).unwrap() {
                    assert_eq!((s.dim(), s.ambient_dim()), (r, m));
                }
            }
        }
    }
}

#[test]
fn sum_and_intersection_dimensions() {
    let gf3 = Field::prime(3).unwrap();
    let spaces = all(&gf3, 3);
    for u in &spaces {
        for v in &spaces {
            let sum = u.sum(&gf3, v).unwrap();
            let meet = u.intersection(&gf3, v).unwrap();
            assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
            assert!(meet.is_subspace_of(&gf3, u) && u.is_subspace_of(&gf3, &sum));
        }
    }
}

#[test]
fn extension_field_subspaces_are_distinct() {
    let gf4 = Field::from_order(4).unwrap();
    let limits = Limits::default();
    let listed: Vec<Subspace> = enumerate_subspaces(&gf4, 3, 1, &limits).unwrap().collect();
    let distinct: std::collections::HashSet<_> = listed.iter().collect();
    assert_eq!((listed.len(), distinct.len()), (21, 21));
}
