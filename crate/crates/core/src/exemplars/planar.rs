//! Planar points as `2×2` matrices `[[x, k₁y], [k₂y, x]]` with `K = k₁k₂`.

use crate::model::{qi, Q};

pub type Mat2 = [[Q; 2]; 2];

/// Embedding with the default factorization `k₁ = K`, `k₂ = 1`.
pub fn planar_matrix_embedding(k: &Q, point: (&Q, &Q)) -> Mat2 {
    planar_matrix_embedding_with(k, &qi(1), point)
}

pub fn planar_matrix_embedding_with(k1: &Q, k2: &Q, point: (&Q, &Q)) -> Mat2 {
    let (x, y) = point;
    [[x.clone(), k1 * y], [k2 * y, x.clone()]]
}

pub fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]))
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

/// `(1 − b)a + bc` in the matrix ring.
pub fn mat_p(a: &Mat2, b: &Mat2, c: &Mat2) -> Mat2 {
    mat_add(a, &mat_mul(b, &mat_sub(c, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::q;

    #[test]
    fn unit_point_embeds_as_identity() {
        let m = planar_matrix_embedding(&qi(1), (&qi(1), &qi(0)));
        assert_eq!(m, [[qi(1), qi(0)], [qi(0), qi(1)]]);
    }

    #[test]
    fn k_minus_one_squares_i_to_minus_one() {
        let k = qi(-1);
        let i = planar_matrix_embedding(&k, (&qi(0), &qi(1)));
        assert_eq!(mat_mul(&i, &i), planar_matrix_embedding(&k, (&qi(-1), &qi(0))));
    }

    #[test]
    fn factorization_does_not_change_products() {
        let (a, b) = ((q(1, 3), q(2, 5)), (q(-1, 2), q(3, 7)));
        let m1 = mat_mul(
            &planar_matrix_embedding_with(&qi(6), &qi(1), (&a.0, &a.1)),
            &planar_matrix_embedding_with(&qi(6), &qi(1), (&b.0, &b.1)),
        );
        let m2 = mat_mul(
            &planar_matrix_embedding_with(&qi(2), &qi(3), (&a.0, &a.1)),
            &planar_matrix_embedding_with(&qi(2), &qi(3), (&b.0, &b.1)),
        );
        assert_eq!(m1[0][0], m2[0][0]);
        assert_eq!(m1[1][0], &m2[1][0] / qi(3));
    }
}
