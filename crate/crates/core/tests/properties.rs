use num_traits::{One, Zero};
use proptest::prelude::*;

use logbundle::arrangement::Arrangement;
use logbundle::exact::{rat, Matrix, Rational};
use logbundle::monoidal::{membership_determinant, monoidal_membership};
use logbundle::proj::{line_to_dual_flat, LineSpan, ProjPoint};
use logbundle::restriction::{is_jumping, splitting_type};
use logbundle::steiner::{cohomology_dims, euler_characteristic};

fn int_matrix(rows: usize, cols: usize, v: &[i64]) -> Matrix {
    Matrix::from_fn(rows, cols, |i, j| rat(v[i * cols + j]))
}

fn arrangement(n: usize, raw: &[i64]) -> Option<Arrangement> {
    let forms = raw
        .chunks(n + 1)
        .map(|c| ProjPoint::from_i64(c).ok())
        .collect::<Option<Vec<_>>>()?;
    Arrangement::new(forms).ok()
}

fn line(n: usize, raw: &[i64]) -> Option<LineSpan> {
    LineSpan::new(int_matrix(2, n + 1, raw)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(-5i64..6, 16),
        b in prop::collection::vec(-5i64..6, 16),
    ) {
        let (a, b) = (int_matrix(4, 4, &a), int_matrix(4, 4, &b));
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn kernel_is_annihilated(v in prop::collection::vec(-4i64..5, 12)) {
        let m = int_matrix(3, 4, &v);
        let k = m.kernel();
        prop_assert_eq!(k.rows() + m.rank(), 4);
        prop_assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn double_association_returns_the_configuration(
        raw in prop::collection::vec(-7i64..8, 21),
    ) {
        let Some(a) = arrangement(2, &raw) else { return Ok(()) };
        let back = a.associated().unwrap().associated().unwrap();
        prop_assert!(logbundle::proj::projective_equivalence(a.forms(), back.forms()).is_some());
    }

    #[test]
    fn splitting_sums_to_first_chern_class(
        raw in prop::collection::vec(-7i64..8, 18),
        l in prop::collection::vec(-7i64..8, 6),
    ) {
        let (Some(a), Some(l)) = (arrangement(2, &raw), line(2, &l)) else { return Ok(()) };
        let t = a.fundamental_tensor().unwrap();
        prop_assert_eq!(splitting_type(&t, &l).unwrap().total(), a.m() - 3);
    }

    #[test]
    fn jumping_lines_are_the_monoidal_complex(
        raw in prop::collection::vec(-7i64..8, 15),
        l in prop::collection::vec(-7i64..8, 6),
    ) {
        let (Some(a), Some(l)) = (arrangement(2, &raw), line(2, &l)) else { return Ok(()) };
        let t = a.fundamental_tensor().unwrap();
        prop_assert_eq!(
            is_jumping(&t, &l).unwrap(),
            monoidal_membership(a.forms(), &line_to_dual_flat(&l)).unwrap()
        );
    }

    #[test]
    fn membership_determinant_is_homogeneous_in_each_point(
        raw in prop::collection::vec(-7i64..8, 15),
        rows in prop::collection::vec(-5i64..6, 6),
        which in 0usize..4,
        scale in 2i64..5,
    ) {
        let Some(a) = arrangement(2, &raw) else { return Ok(()) };
        let rows = int_matrix(2, 3, &rows);
        prop_assume!(rows.rank() == 2);
        let mut points: Vec<Vec<Rational>> = a.forms().iter().map(|p| p.coords().to_vec()).collect();
        let base = membership_determinant(&points, &rows).unwrap();
        for x in &mut points[which] {
            *x *= rat(scale);
        }
        let scaled = membership_determinant(&points, &rows).unwrap();
        // d = 2: degree d in every point except the centre, the last one.
        prop_assert_eq!(scaled, base * rat(scale * scale));
    }

    #[test]
    fn cohomology_matches_euler_characteristic(
        raw in prop::collection::vec(-7i64..8, 24),
        k in -5i64..4,
    ) {
        let Some(a) = arrangement(3, &raw) else { return Ok(()) };
        let h = cohomology_dims(&a.fundamental_tensor().unwrap(), k);
        let alternating: i64 = h
            .iter()
            .enumerate()
            .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        prop_assert_eq!(alternating, euler_characteristic(&a.fundamental_tensor().unwrap(), k));
    }
}

#[test]
fn identity_has_unit_determinant() {
    assert!(Matrix::identity(5).det().unwrap().is_one());
    assert!(Matrix::zeros(3, 3).det().unwrap().is_zero());
}
