//! Colored partitions and their category operations.
//!
//! A colored partition has an upper row of `k` legs and a lower row of `l`
//! legs, each leg colored white or black, together with a set partition of
//! all `k + l` legs. Legs are numbered upper-left to upper-right, then
//! lower-left to lower-right, and blocks are kept in a canonical
//! first-appearance labeling so that equality, ordering and hashing are
//! structural.
//!
//! The three category operations are horizontal concatenation, vertical
//! concatenation with deletion (and counting) of blocks closed in the glued
//! middle row, and the upside-down turn with color reversal.
//!
//! Text format: `wb / wb ; u1 d1 ; u2 d2` — colors of the two rows
//! separated by `/`, then one `;`-separated group of legs per block, `u<i>`
//! and `d<i>` 1-based.

mod closure;
mod intertwiner;
mod pairings;
mod tmap;

pub use closure::{all_colored_partitions, closure, set_partitions};
pub use intertwiner::{
    intertwiner_residual, rep_tensor_power, unk_crossing, u_inf_generator_one,
    u_inf_generator_two, white_cup, DEFAULT_REP_CAP,
};
pub use pairings::enumerate_pairings;
pub use tmap::{span_dimension, t_map, DEFAULT_TMAP_CAP};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("rows to glue differ in length or colors")]
    ColorMismatch,
    #[error("pairings need an even total number of legs, got {0}")]
    OddLegCount(usize),
    #[error("blocks must partition the legs exactly once: {0}")]
    BadBlocks(String),
    #[error("size cap exceeded: needs {needed} entries, cap {cap}")]
    SizeCap { needed: usize, cap: usize },
    #[error("partitions must share upper/lower colors, found a mismatch")]
    MixedSignatures,
    #[error("bad partition text: {0}")]
    BadFormat(String),
    #[error("model samples must share the partition's ambient dimension")]
    AmbientMismatch,
}

/// Leg color. White legs carry the fundamental representation, black legs
/// its conjugate, in intertwiner checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }
}

/// An element of `P(k, l)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPartition {
    upper: Vec<Color>,
    lower: Vec<Color>,
    /// Block label per leg, restricted-growth form: labels appear in
    /// increasing order of first occurrence.
    block_of: Vec<usize>,
}

/// Result of vertical concatenation: the glued partition and the number of
/// blocks that closed up in the middle row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub partition: ColoredPartition,
    pub removed_loops: usize,
}

fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map: Vec<Option<usize>> = vec![None; raw.len().max(raw.iter().map(|x| x + 1).max().unwrap_or(0))];
    let mut next = 0usize;
    let mut out = Vec::with_capacity(raw.len());
    for &r in raw {
        let label = match map[r] {
            Some(l) => l,
            None => {
                let l = next;
                map[r] = Some(l);
                next += 1;
                l
            }
        };
        out.push(label);
    }
    out
}

impl ColoredPartition {
    /// Build from explicit blocks of leg indices (legs `0..k+l`).
    pub fn from_blocks(
        upper: Vec<Color>,
        lower: Vec<Color>,
        blocks: &[Vec<usize>],
    ) -> Result<Self, PartitionError> {
        let total = upper.len() + lower.len();
        let mut block_of = vec![usize::MAX; total];
        for (b, legs) in blocks.iter().enumerate() {
            for &leg in legs {
                if leg >= total {
                    return Err(PartitionError::BadBlocks(format!(
                        "leg {leg} out of range 0..{total}"
                    )));
                }
                if block_of[leg] != usize::MAX {
                    return Err(PartitionError::BadBlocks(format!("leg {leg} used twice")));
                }
                block_of[leg] = b;
            }
        }
        if let Some(miss) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::BadBlocks(format!("leg {miss} uncovered")));
        }
        Ok(ColoredPartition {
            upper,
            lower,
            block_of: canonical_labels(&block_of),
        })
    }

    /// The one-leg identity of a color.
    pub fn identity(color: Color) -> Self {
        ColoredPartition {
            upper: vec![color],
            lower: vec![color],
            block_of: vec![0, 0],
        }
    }

    /// The empty partition in `P(0, 0)`.
    pub fn empty() -> Self {
        ColoredPartition {
            upper: vec![],
            lower: vec![],
            block_of: vec![],
        }
    }

    pub fn upper_colors(&self) -> &[Color] {
        &self.upper
    }

    pub fn lower_colors(&self) -> &[Color] {
        &self.lower
    }

    pub fn k(&self) -> usize {
        self.upper.len()
    }

    pub fn l(&self) -> usize {
        self.lower.len()
    }

    pub fn legs(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Block label of an upper leg (0-based position).
    pub fn block_of_upper(&self, pos: usize) -> usize {
        self.block_of[pos]
    }

    /// Block label of a lower leg (0-based position).
    pub fn block_of_lower(&self, pos: usize) -> usize {
        self.block_of[self.upper.len() + pos]
    }

    /// Blocks as sorted lists of leg indices.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (leg, &b) in self.block_of.iter().enumerate() {
            out[b].push(leg);
        }
        out
    }

    /// Horizontal concatenation.
    pub fn tensor(&self, other: &ColoredPartition) -> ColoredPartition {
        let (k1, l1) = (self.k(), self.l());
        let (k2, l2) = (other.k(), other.l());
        let mut upper = self.upper.clone();
        upper.extend_from_slice(&other.upper);
        let mut lower = self.lower.clone();
        lower.extend_from_slice(&other.lower);
        let shift = self.num_blocks();
        let mut block_of = vec![0usize; k1 + k2 + l1 + l2];
        for pos in 0..k1 {
            block_of[pos] = self.block_of[pos];
        }
        for pos in 0..k2 {
            block_of[k1 + pos] = other.block_of[pos] + shift;
        }
        for pos in 0..l1 {
            block_of[k1 + k2 + pos] = self.block_of[k1 + pos];
        }
        for pos in 0..l2 {
            block_of[k1 + k2 + l1 + pos] = other.block_of[k2 + pos] + shift;
        }
        ColoredPartition {
            upper,
            lower,
            block_of: canonical_labels(&block_of),
        }
    }

    /// Vertical concatenation, `other` drawn below `self`: glue this
    /// partition's lower row to the other's upper row, merge blocks through
    /// the shared legs, and delete (counting them) the blocks supported
    /// entirely in the middle.
    pub fn compose(&self, other: &ColoredPartition) -> Result<CompositionResult, PartitionError> {
        if self.lower != other.upper {
            return Err(PartitionError::ColorMismatch);
        }
        let k = self.k();
        let l = self.l();
        let m = other.l();
        // union-find over k upper + l middle + m lower nodes
        let mut parent: Vec<usize> = (0..k + l + m).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let ra = find(parent, a);
            let rb = find(parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        };
        // self's legs live on nodes 0..k (upper) and k..k+l (middle)
        for leg in 1..k + l {
            for prev in 0..leg {
                if self.block_of[leg] == self.block_of[prev] {
                    union(&mut parent, leg, prev);
                    break;
                }
            }
        }
        // other's legs live on nodes k..k+l (middle) and k+l..k+l+m (lower)
        for leg in 1..l + m {
            for prev in 0..leg {
                if other.block_of[leg] == other.block_of[prev] {
                    union(&mut parent, k + leg, k + prev);
                    break;
                }
            }
        }
        // collect groups, keep boundary legs, count interior loops
        let mut group_boundary: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        let mut seen_roots: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
        for node in 0..k + l + m {
            let root = find(&mut parent, node);
            seen_roots.insert(root);
            let boundary_leg = if node < k {
                Some(node)
            } else if node >= k + l {
                Some(node - l)
            } else {
                None
            };
            if let Some(leg) = boundary_leg {
                group_boundary.entry(root).or_default().push(leg);
            }
        }
        let removed_loops = seen_roots.len() - group_boundary.len();
        let blocks: Vec<Vec<usize>> = group_boundary.into_values().collect();
        let partition =
            ColoredPartition::from_blocks(self.upper.clone(), other.lower.clone(), &blocks)?;
        Ok(CompositionResult {
            partition,
            removed_loops,
        })
    }

    /// Upside-down turn with color reversal: rows swap (left-right order
    /// preserved) and every leg's color flips.
    pub fn involution(&self) -> ColoredPartition {
        let k = self.k();
        let l = self.l();
        let upper: Vec<Color> = self.lower.iter().map(|c| c.flipped()).collect();
        let lower: Vec<Color> = self.upper.iter().map(|c| c.flipped()).collect();
        let mut block_of = vec![0usize; k + l];
        for pos in 0..l {
            block_of[pos] = self.block_of[k + pos];
        }
        for pos in 0..k {
            block_of[l + pos] = self.block_of[pos];
        }
        ColoredPartition {
            upper,
            lower,
            block_of: canonical_labels(&block_of),
        }
    }
}

fn colors_to_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.as_char()).collect()
}

fn parse_colors(s: &str) -> Result<Vec<Color>, PartitionError> {
    s.trim()
        .chars()
        .map(|ch| match ch {
            'w' => Ok(Color::White),
            'b' => Ok(Color::Black),
            other => Err(PartitionError::BadFormat(format!("bad color `{other}`"))),
        })
        .collect()
}

impl std::fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} / {}",
            colors_to_string(&self.upper),
            colors_to_string(&self.lower)
        )?;
        let k = self.k();
        for block in self.blocks() {
            write!(f, " ; ")?;
            for (pos, &leg) in block.iter().enumerate() {
                if pos > 0 {
                    write!(f, " ")?;
                }
                if leg < k {
                    write!(f, "u{}", leg + 1)?;
                } else {
                    write!(f, "d{}", leg - k + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for ColoredPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut segments = s.split(';');
        let head = segments
            .next()
            .ok_or_else(|| PartitionError::BadFormat("empty text".into()))?;
        let (up, low) = head
            .split_once('/')
            .ok_or_else(|| PartitionError::BadFormat("missing `/` between rows".into()))?;
        let upper = parse_colors(up)?;
        let lower = parse_colors(low)?;
        let k = upper.len();
        let mut blocks = Vec::new();
        for seg in segments {
            let mut block = Vec::new();
            for tok in seg.split_whitespace() {
                let (row, idx) = tok.split_at(1);
                let idx: usize = idx
                    .parse()
                    .map_err(|_| PartitionError::BadFormat(format!("bad leg `{tok}`")))?;
                if idx == 0 {
                    return Err(PartitionError::BadFormat(format!("bad leg `{tok}`")));
                }
                let leg = match row {
                    "u" => idx - 1,
                    "d" => k + idx - 1,
                    _ => return Err(PartitionError::BadFormat(format!("bad leg `{tok}`"))),
                };
                block.push(leg);
            }
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        ColoredPartition::from_blocks(upper, lower, &blocks)
    }
}
