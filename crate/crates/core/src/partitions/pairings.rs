//! Perfect pairings with the charge-matching and planarity filters.
//!
//! Charges: a white upper leg and a black lower leg carry `+1`, a black
//! upper leg and a white lower leg carry `-1`. A pairing matches when every
//! string's endpoint charges cancel — exactly the pairings intertwining the
//! classical unitary group. Crossings are read in the boundary cyclic order
//! of the rectangle: upper row left to right, then lower row right to left.

use super::{Color, ColoredPartition, PartitionError};

fn charge(color: Color, is_upper: bool) -> i32 {
    match (color, is_upper) {
        (Color::White, true) | (Color::Black, false) => 1,
        (Color::Black, true) | (Color::White, false) => -1,
    }
}

/// All perfect pairings of the legs, optionally filtered to charge-matching
/// and/or noncrossing ones.
pub fn enumerate_pairings(
    upper: &[Color],
    lower: &[Color],
    matching_only: bool,
    noncrossing_only: bool,
) -> Result<Vec<ColoredPartition>, PartitionError> {
    let k = upper.len();
    let l = lower.len();
    let total = k + l;
    if total % 2 != 0 {
        return Err(PartitionError::OddLegCount(total));
    }
    let charges: Vec<i32> = upper
        .iter()
        .map(|&c| charge(c, true))
        .chain(lower.iter().map(|&c| charge(c, false)))
        .collect();
    // boundary position: upper left→right, then lower right→left
    let boundary: Vec<usize> = (0..total)
        .map(|leg| if leg < k { leg } else { k + (total - 1 - leg) })
        .collect();
    let mut out = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(total / 2);
    let mut used = vec![false; total];
    fn crossings(pairs: &[(usize, usize)], boundary: &[usize]) -> bool {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let (pa, pb) = (boundary[a].min(boundary[b]), boundary[a].max(boundary[b]));
            for &(c, d) in &pairs[i + 1..] {
                let (pc, pd) = (boundary[c].min(boundary[d]), boundary[c].max(boundary[d]));
                let c_inside = pa < pc && pc < pb;
                let d_inside = pa < pd && pd < pb;
                if c_inside != d_inside {
                    return true;
                }
            }
        }
        false
    }
    fn recurse(
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        charges: &[i32],
        boundary: &[usize],
        matching_only: bool,
        noncrossing_only: bool,
        upper: &[Color],
        lower: &[Color],
        out: &mut Vec<ColoredPartition>,
    ) {
        let first = match used.iter().position(|&u| !u) {
            None => {
                if !noncrossing_only || !crossings(pairs, boundary) {
                    let blocks: Vec<Vec<usize>> =
                        pairs.iter().map(|&(a, b)| vec![a, b]).collect();
                    out.push(
                        ColoredPartition::from_blocks(upper.to_vec(), lower.to_vec(), &blocks)
                            .expect("pairs partition the legs"),
                    );
                }
                return;
            }
            Some(f) => f,
        };
        used[first] = true;
        for second in (first + 1)..used.len() {
            if used[second] {
                continue;
            }
            if matching_only && charges[first] + charges[second] != 0 {
                continue;
            }
            used[second] = true;
            pairs.push((first, second));
            recurse(
                used,
                pairs,
                charges,
                boundary,
                matching_only,
                noncrossing_only,
                upper,
                lower,
                out,
            );
            pairs.pop();
            used[second] = false;
        }
        used[first] = false;
    }
    recurse(
        &mut used,
        &mut pairs,
        &charges,
        &boundary,
        matching_only,
        noncrossing_only,
        upper,
        lower,
        &mut out,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: Color = Color::White;
    const B: Color = Color::Black;

    #[test]
    fn alternating_row_has_two_matching_pairings_both_planar() {
        let row = [W, B, W, B];
        let matching = enumerate_pairings(&row, &[], true, false).unwrap();
        assert_eq!(matching.len(), 2);
        let planar = enumerate_pairings(&row, &[], true, true).unwrap();
        assert_eq!(planar.len(), 2);
    }

    #[test]
    fn grouped_row_has_two_matching_but_one_planar() {
        let row = [W, W, B, B];
        let matching = enumerate_pairings(&row, &[], true, false).unwrap();
        assert_eq!(matching.len(), 2);
        let planar = enumerate_pairings(&row, &[], true, true).unwrap();
        assert_eq!(planar.len(), 1);
        // the planar one is {1-4, 2-3}
        let p = &planar[0];
        assert_eq!(p.block_of_upper(0), p.block_of_upper(3));
        assert_eq!(p.block_of_upper(1), p.block_of_upper(2));
    }

    #[test]
    fn zero_legs_has_the_empty_pairing() {
        let all = enumerate_pairings(&[], &[], true, true).unwrap();
        assert_eq!(all, vec![ColoredPartition::empty()]);
    }

    #[test]
    fn odd_leg_count_is_an_error() {
        assert_eq!(
            enumerate_pairings(&[W], &[], false, false),
            Err(PartitionError::OddLegCount(1))
        );
    }

    #[test]
    fn unfiltered_count_is_a_double_factorial() {
        let all = enumerate_pairings(&[W, W, W, W], &[W, W], false, false).unwrap();
        assert_eq!(all.len(), 15); // 5!! = 15
    }

    #[test]
    fn two_row_identity_pairing_is_matching_and_planar() {
        let res = enumerate_pairings(&[W, B], &[W, B], true, true).unwrap();
        // {u1-d1, u2-d2} and {u1-u2, d1-d2}
        assert_eq!(res.len(), 2);
        // strings through the rectangle do not cross each other
        for p in &res {
            assert_eq!(p.num_blocks(), 2);
        }
    }
}
