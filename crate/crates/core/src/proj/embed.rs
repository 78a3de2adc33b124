use super::ProjPoint;
use crate::exact::{evaluation_functional, Rational};

/// Degree-`d` monomials of `coords` in graded-lex order.
pub fn veronese_coords(coords: &[Rational], d: u32) -> Vec<Rational> {
    evaluation_functional(d, coords)
}

/// Veronese image of degree `d >= 1`.
pub fn veronese(p: &ProjPoint, d: u32) -> ProjPoint {
    assert!(d >= 1, "veronese degree must be positive");
    ProjPoint::new(veronese_coords(p.coords(), d))
        .expect("a power of a nonzero coordinate is nonzero")
}

/// Segre image: the outer product `p_i q_j`, row-major.
pub fn segre(p: &ProjPoint, q: &ProjPoint) -> ProjPoint {
    let coords = p
        .coords()
        .iter()
        .flat_map(|a| q.coords().iter().map(move |b| a * b))
        .collect();
    ProjPoint::new(coords).expect("outer product of nonzero vectors is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;
    use crate::proj::general_position;
    use crate::rng::XorShift64Star;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    #[test]
    fn veronese_examples() {
        assert_eq!(veronese(&p(&[1, 0, 0]), 2), p(&[1, 0, 0, 0, 0, 0]));
        assert_eq!(veronese(&p(&[1, 1]), 3), p(&[1, 1, 1, 1]));
        assert_eq!(veronese(&p(&[1, 2]), 2), p(&[1, 2, 4]));
    }

    #[test]
    fn segre_examples() {
        assert_eq!(segre(&p(&[1, 0]), &p(&[1, 0])), p(&[1, 0, 0, 0]));
        assert_eq!(segre(&p(&[1, 1]), &p(&[1, 1])), p(&[1, 1, 1, 1]));
        assert_eq!(segre(&p(&[1, 2]), &p(&[1, 3])), p(&[1, 3, 2, 6]));
    }

    #[test]
    fn veronese_of_random_general_points_keeps_full_rank() {
        // n+1 general points have independent Veronese images.
        let mut rng = XorShift64Star::new(3);
        for n in 1..4 {
            let pts: Vec<ProjPoint> = (0..n + 1)
                .map(|_| ProjPoint::new(rng.nonzero_vector(n + 1, -5, 5)).unwrap())
                .collect();
            if !general_position(&pts, n) {
                continue;
            }
            let rows: Vec<Vec<Rational>> = pts
                .iter()
                .map(|q| veronese(q, 2).coords().to_vec())
                .collect();
            let dim = rows[0].len();
            assert_eq!(Matrix::from_rows(dim, rows).unwrap().rank(), n + 1);
        }
    }

    proptest! {
        #[test]
        fn segre_is_well_defined_projectively(
            a in prop::collection::vec(-6i64..6, 3),
            b in prop::collection::vec(-6i64..6, 2),
            k in 1i64..5,
        ) {
            prop_assume!(a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0));
            let scaled: Vec<i64> = a.iter().map(|x| x * k).collect();
            prop_assert_eq!(segre(&p(&a), &p(&b)), segre(&p(&scaled), &p(&b)));
            prop_assert_eq!(veronese(&p(&a), 3), veronese(&p(&scaled), 3));
        }
    }
}
