//! Bounded category closure and exhaustive enumeration.

use std::collections::BTreeSet;

use super::{Color, ColoredPartition};

/// Least set of partitions containing the generators and both colored
/// identities, closed under tensor, composition and involution, with every
/// intermediate pruned at `max_legs` total legs. This computes a truncation
/// of the generated category: results that would exceed the bound are
/// discarded before re-expansion.
pub fn closure(generators: &[ColoredPartition], max_legs: usize) -> BTreeSet<ColoredPartition> {
    let mut set: BTreeSet<ColoredPartition> = BTreeSet::new();
    let mut queue: Vec<ColoredPartition> = Vec::new();
    let push = |set: &mut BTreeSet<ColoredPartition>,
                    queue: &mut Vec<ColoredPartition>,
                    p: ColoredPartition| {
        if p.legs() <= max_legs && set.insert(p.clone()) {
            queue.push(p);
        }
    };
    push(&mut set, &mut queue, ColoredPartition::identity(Color::White));
    push(&mut set, &mut queue, ColoredPartition::identity(Color::Black));
    for g in generators {
        push(&mut set, &mut queue, g.clone());
    }
    while let Some(p) = queue.pop() {
        push(&mut set, &mut queue, p.involution());
        let existing: Vec<ColoredPartition> = set.iter().cloned().collect();
        for q in &existing {
            for t in [p.tensor(q), q.tensor(&p)] {
                push(&mut set, &mut queue, t);
            }
            if let Ok(c) = p.compose(q) {
                push(&mut set, &mut queue, c.partition);
            }
            if let Ok(c) = q.compose(&p) {
                push(&mut set, &mut queue, c.partition);
            }
        }
    }
    set
}

/// All set partitions of `{0, …, m-1}` as restricted-growth strings.
pub fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; m];
    fn recurse(current: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for label in 0..=max_used + 1 {
            current[pos] = label;
            recurse(current, pos + 1, max_used.max(label), out);
        }
    }
    if m == 0 {
        return vec![vec![]];
    }
    // first leg always labeled 0
    current[0] = 0;
    recurse(&mut current, 1, 0, &mut out);
    out
}

/// Every colored partition with the given row lengths.
pub fn all_colored_partitions(k: usize, l: usize) -> Vec<ColoredPartition> {
    let total = k + l;
    let partitions = set_partitions(total);
    let mut out = Vec::new();
    for colors in 0..(1u32 << total) {
        let upper: Vec<Color> = (0..k)
            .map(|i| {
                if colors >> i & 1 == 0 {
                    Color::White
                } else {
                    Color::Black
                }
            })
            .collect();
        let lower: Vec<Color> = (0..l)
            .map(|i| {
                if colors >> (k + i) & 1 == 0 {
                    Color::White
                } else {
                    Color::Black
                }
            })
            .collect();
        for rgs in &partitions {
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (leg, &b) in rgs.iter().enumerate() {
                if b == blocks.len() {
                    blocks.push(vec![leg]);
                } else {
                    blocks[b].push(leg);
                }
            }
            out.push(
                ColoredPartition::from_blocks(upper.clone(), lower.clone(), &blocks)
                    .expect("restricted-growth strings are valid partitions"),
            );
        }
    }
    out
}
