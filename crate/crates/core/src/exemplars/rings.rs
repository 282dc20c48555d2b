//! Finite rings of matrices over `Z/n`, tabulated.

use std::collections::HashMap;

use crate::model::{Carrier, ModelError, OpImpl, RingStructure, Table, Value};

/// Which `d×d` matrices over `Z/n` make up the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixShape {
    Full,
    UpperTriangular,
}

/// Tabulates the ring of `d×d` matrices (of the given shape) over `Z/n`.
/// With `d = 1` this is `Z/n` itself, labelled `"0"`..`"n-1"`.
pub fn matrix_ring(
    name: &str,
    modulus: u32,
    dim: usize,
    shape: MatrixShape,
) -> Result<RingStructure, ModelError> {
    if modulus < 1 || dim < 1 {
        return Err(ModelError::InvalidParameter("modulus and dimension must be positive".into()));
    }
    let n = modulus as u64;
    let free: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| shape == MatrixShape::Full || i <= j)
        .collect();
    let size = n.checked_pow(free.len() as u32).filter(|&s| s <= 4096).ok_or_else(|| {
        ModelError::InvalidParameter(format!("{modulus}^{} elements is too many to tabulate", free.len()))
    })? as usize;

    let mut elements: Vec<Vec<u64>> = Vec::with_capacity(size);
    for mut code in 0..size as u64 {
        let mut m = vec![0u64; dim * dim];
        for &(i, j) in free.iter().rev() {
            m[i * dim + j] = code % n;
            code /= n;
        }
        elements.push(m);
    }
    let index: HashMap<Vec<u64>, usize> =
        elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let label = |m: &[u64]| -> String {
        if dim == 1 {
            return m[0].to_string();
        }
        let rows: Vec<String> = m
            .chunks(dim)
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    };
    let labels: Vec<String> = elements.iter().map(|m| label(m)).collect();

    let add = Table::from_fn(size, 2, |a| {
        let m: Vec<u64> = (0..dim * dim).map(|k| (elements[a[0]][k] + elements[a[1]][k]) % n).collect();
        index[&m]
    });
    let mul = Table::from_fn(size, 2, |a| {
        let (x, y) = (&elements[a[0]], &elements[a[1]]);
        let mut m = vec![0u64; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[i * dim + j] = (0..dim).map(|k| x[i * dim + k] * y[k * dim + j]).sum::<u64>() % n;
            }
        }
        index[&m]
    });
    let neg = Table::from_fn(size, 1, |a| {
        let m: Vec<u64> = elements[a[0]].iter().map(|&e| (n - e) % n).collect();
        index[&m]
    });
    let mut identity = vec![0u64; dim * dim];
    for i in 0..dim {
        identity[i * dim + i] = 1 % n;
    }
    RingStructure::new(
        name,
        Carrier::Finite(labels),
        OpImpl::Table(add),
        OpImpl::Table(mul),
        OpImpl::Table(neg),
        Value::Label(index[&vec![0u64; dim * dim]]),
        Value::Label(index[&identity]),
    )
}

pub fn zmod(modulus: u32) -> Result<RingStructure, ModelError> {
    matrix_ring(&format!("Z{modulus}"), modulus, 1, MatrixShape::Full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_tables_are_modular_arithmetic() {
        let r = zmod(6).unwrap();
        let l = Value::Label;
        assert_eq!(r.add(&l(4), &l(5)).unwrap(), l(3));
        assert_eq!(r.mul(&l(4), &l(5)).unwrap(), l(2));
        assert_eq!(r.neg(&l(1)).unwrap(), l(5));
        assert_eq!(r.one(), &l(1));
    }

    #[test]
    fn matrix_product_is_not_commutative() {
        let r = matrix_ring("M2(Z3)", 3, 2, MatrixShape::Full).unwrap();
        assert_eq!(r.carrier().size(), Some(81));
        let pos = |s: &str| Value::Label(r.carrier().position(s).unwrap());
        let e12 = pos("[0,1;0,0]");
        let e21 = pos("[0,0;1,0]");
        assert_eq!(r.mul(&e12, &e21).unwrap(), pos("[1,0;0,0]"));
        assert_eq!(r.mul(&e21, &e12).unwrap(), pos("[0,0;0,1]"));
        assert_eq!(r.one(), &pos("[1,0;0,1]"));
    }

    #[test]
    fn triangular_matrices_have_the_expected_count() {
        let r = matrix_ring("T2(Z3)", 3, 2, MatrixShape::UpperTriangular).unwrap();
        assert_eq!(r.carrier().size(), Some(27));
    }
}
