//! The 0/1 tensor realization of a partition.

use num_complex::Complex64;

use crate::model::{numerical_rank, CMatrix};

use super::{ColoredPartition, PartitionError};

/// Default cap on `N^(k+l)`, the entry count of a realization.
pub const DEFAULT_TMAP_CAP: usize = 100_000;

/// The `N^l x N^k` matrix of a partition: entry `((j), (i))` is `1` exactly
/// when the joint index assignment (upper legs read `i`, lower legs read
/// `j`) is constant on every block. Colors do not enter here; they decide
/// which tensor factors carry the conjugate representation in intertwiner
/// checks.
///
/// Multi-indices are row-major with the first leg most significant.
pub fn t_map(p: &ColoredPartition, n: u32, size_cap: usize) -> Result<CMatrix, PartitionError> {
    let k = p.k();
    let l = p.l();
    let n = n as usize;
    let rows = n.checked_pow(l as u32).unwrap_or(usize::MAX);
    let cols = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    let needed = rows.saturating_mul(cols);
    if needed > size_cap {
        return Err(PartitionError::SizeCap {
            needed,
            cap: size_cap,
        });
    }
    let blocks = p.blocks();
    let mut m = CMatrix::zeros(rows, cols);
    let mut upper_idx = vec![0usize; k];
    let mut lower_idx = vec![0usize; l];
    for col in 0..cols {
        let mut rem = col;
        for pos in (0..k).rev() {
            upper_idx[pos] = rem % n;
            rem /= n;
        }
        'rows: for row in 0..rows {
            let mut rem = row;
            for pos in (0..l).rev() {
                lower_idx[pos] = rem % n;
                rem /= n;
            }
            for block in &blocks {
                let mut value: Option<usize> = None;
                for &leg in block {
                    let v = if leg < k {
                        upper_idx[leg]
                    } else {
                        lower_idx[leg - k]
                    };
                    match value {
                        None => value = Some(v),
                        Some(w) if w == v => {}
                        Some(_) => continue 'rows,
                    }
                }
            }
            m[(row, col)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

/// Numerical rank of the span of the flattened realizations, relative
/// singular-value cutoff `1e-9`. All partitions must share `(k, l)` and
/// both color rows.
pub fn span_dimension(
    ps: &[ColoredPartition],
    n: u32,
    size_cap: usize,
) -> Result<usize, PartitionError> {
    if ps.is_empty() {
        return Ok(0);
    }
    let first = &ps[0];
    for p in ps {
        if p.upper_colors() != first.upper_colors() || p.lower_colors() != first.lower_colors() {
            return Err(PartitionError::MixedSignatures);
        }
    }
    let flat_len = (n as usize).pow((first.k() + first.l()) as u32);
    let mut m = CMatrix::zeros(ps.len(), flat_len);
    for (r, p) in ps.iter().enumerate() {
        let t = t_map(p, n, size_cap)?;
        for (pos, v) in t.iter().enumerate() {
            // nalgebra iterates column-major; the flattening just has to be
            // consistent across rows
            m[(r, pos)] = *v;
        }
    }
    Ok(numerical_rank(&m, 1e-9))
}

#[cfg(test)]
mod tests {
    use super::super::Color;
    use super::*;

    #[test]
    fn identity_realizes_as_identity_matrix() {
        let id = ColoredPartition::identity(Color::White);
        let m = t_map(&id, 3, DEFAULT_TMAP_CAP).unwrap();
        assert_eq!(m, CMatrix::identity(3, 3));
    }

    #[test]
    fn cup_realizes_as_the_diagonal_vector() {
        let cup: ColoredPartition = " / ww ; d1 d2".parse().unwrap();
        let m = t_map(&cup, 2, DEFAULT_TMAP_CAP).unwrap();
        assert_eq!(m.nrows(), 4);
        assert_eq!(m.ncols(), 1);
        let ones: Vec<usize> = (0..4).filter(|&r| m[(r, 0)].re == 1.0).collect();
        assert_eq!(ones, vec![0, 3]); // e_1⊗e_1 and e_2⊗e_2
    }

    #[test]
    fn half_swap_diagram_is_the_expected_permutation() {
        // upper leg a joined to lower leg a+2 mod 4:
        // e_{i1}⊗e_{i2}⊗e_{i3}⊗e_{i4} ↦ e_{i3}⊗e_{i4}⊗e_{i1}⊗e_{i2}
        let p: ColoredPartition = "wbbw / bwwb ; u1 d3 ; u2 d4 ; u3 d1 ; u4 d2"
            .parse()
            .unwrap();
        let n = 2usize;
        let m = t_map(&p, 2, DEFAULT_TMAP_CAP).unwrap();
        for col in 0..n.pow(4) {
            let i = [col >> 3 & 1, col >> 2 & 1, col >> 1 & 1, col & 1];
            let j = [i[2], i[3], i[0], i[1]];
            let row = (j[0] << 3) | (j[1] << 2) | (j[2] << 1) | j[3];
            for r in 0..n.pow(4) {
                let expect = if r == row { 1.0 } else { 0.0 };
                assert_eq!(m[(r, col)].re, expect, "col {col} row {r}");
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let p: ColoredPartition = "wwww / wwww ; u1 d1 ; u2 d2 ; u3 d3 ; u4 d4"
            .parse()
            .unwrap();
        assert!(matches!(
            t_map(&p, 10, 1000),
            Err(PartitionError::SizeCap { .. })
        ));
    }

    #[test]
    fn span_of_the_two_matching_pairings() {
        // upper wb, lower wb: {u1 u2}{d1 d2} and {u1 d1}{u2 d2}
        let a: ColoredPartition = "wb / wb ; u1 u2 ; d1 d2".parse().unwrap();
        let b: ColoredPartition = "wb / wb ; u1 d1 ; u2 d2".parse().unwrap();
        assert_eq!(
            span_dimension(&[a.clone()], 2, DEFAULT_TMAP_CAP).unwrap(),
            1
        );
        assert_eq!(
            span_dimension(&[a.clone(), b.clone()], 2, DEFAULT_TMAP_CAP).unwrap(),
            2
        );
        assert_eq!(
            span_dimension(&[a.clone(), b.clone()], 3, DEFAULT_TMAP_CAP).unwrap(),
            2
        );
        // at N = 1 every realization collapses to the 1x1 matrix [1]
        assert_eq!(span_dimension(&[a, b], 1, DEFAULT_TMAP_CAP).unwrap(), 1);
    }

    #[test]
    fn mixed_signatures_are_rejected() {
        let a: ColoredPartition = "w / w ; u1 d1".parse().unwrap();
        let b: ColoredPartition = "b / b ; u1 d1".parse().unwrap();
        assert_eq!(
            span_dimension(&[a, b], 2, DEFAULT_TMAP_CAP),
            Err(PartitionError::MixedSignatures)
        );
    }
}
