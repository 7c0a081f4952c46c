use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Decomposition level of the tree roots; each tree spans levels 3, 2, 1
/// and holds `1 + 4 + 16 = 21` coefficients.
pub const TREE_ROOT_LEVEL: usize = 3;

/// Vector index of coefficient `(row, col)` of detail subband
/// `orientation` at `level` (1 = finest) in the Mallat layout.
pub fn coefficient_index(side: usize, level: usize, orientation: usize, row: usize, col: usize) -> usize {
    let s = side >> level;
    debug_assert!(orientation < 3 && row < s && col < s);
    let (r0, c0) = match orientation {
        0 => (0, s),
        1 => (s, 0),
        _ => (s, s),
    };
    (r0 + row) * side + c0 + col
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRole {
    /// Approximation plus every detail level coarser than the tree roots.
    Coarse,
    Tree,
}

impl SetRole {
    fn tag(self) -> &'static str {
        match self {
            SetRole::Coarse => "coarse",
            SetRole::Tree => "tree",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeRoot {
    pub orientation: usize,
    pub row: usize,
    pub col: usize,
}

/// Disjoint cover of the 2D coefficient indices by one coarse set and
/// quadtree-structured wavelet trees.
#[derive(Clone, Debug, PartialEq)]
pub struct TreePartition {
    side: usize,
    levels: usize,
    sets: Vec<Vec<usize>>,
    roles: Vec<SetRole>,
    roots: Vec<Option<TreeRoot>>,
}

impl TreePartition {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Number of coefficients covered (`side²`).
    pub fn total(&self) -> usize {
        self.side * self.side
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn role(&self, i: usize) -> SetRole {
        self.roles[i]
    }

    pub fn root(&self, i: usize) -> Option<TreeRoot> {
        self.roots[i]
    }

    /// Indices of the tree (non-coarse) sets.
    pub fn tree_sets(&self) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.roles[i] == SetRole::Tree)
            .collect()
    }

    /// Mallat-layout vector index, see [`coefficient_index`].
    pub fn coefficient_index(&self, level: usize, orientation: usize, row: usize, col: usize) -> usize {
        coefficient_index(self.side, level, orientation, row, col)
    }

    /// One line per set: role tag followed by space-separated indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (set, role) in self.sets.iter().zip(&self.roles) {
            out.push_str(role.tag());
            for i in set {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
        }
        out
    }

    /// Set membership parsed from [`TreePartition::to_text`] output; checks
    /// that the sets form a disjoint cover of `0..n`.
    pub fn parse_sets(text: &str) -> Result<Vec<(SetRole, Vec<usize>)>> {
        let perr = |message: String| Error::Parse {
            context: "partition".into(),
            message,
        };
        let mut out = Vec::new();
        for (ln, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let mut tok = line.split_ascii_whitespace();
            let role = match tok.next() {
                Some("coarse") => SetRole::Coarse,
                Some("tree") => SetRole::Tree,
                other => return Err(perr(format!("line {}: unknown role {other:?}", ln + 1))),
            };
            let idx = tok
                .map(|t| t.parse::<usize>().map_err(|e| perr(format!("line {}: {e}", ln + 1))))
                .collect::<Result<Vec<_>>>()?;
            out.push((role, idx));
        }
        let n: usize = out.iter().map(|s| s.1.len()).sum();
        let mut seen = vec![false; n];
        for i in out.iter().flat_map(|s| &s.1) {
            if *i >= n || std::mem::replace(&mut seen[*i], true) {
                return Err(perr(format!("index {i} repeated or out of range")));
            }
        }
        Ok(out)
    }
}

/// Partition of the `side²` Mallat coefficients into one coarse set (the
/// top-left `(side/8)²` block) and `3·(side/8)²` trees rooted at level 3.
///
/// For `side = 32`, `levels = 5` this gives 49 sets: a coarse 4×4 block of
/// 16 coefficients and 48 trees of 21.
pub fn tree_partition(side: usize, levels: usize) -> Result<TreePartition> {
    if levels < TREE_ROOT_LEVEL || side == 0 || side % (1 << levels) != 0 {
        return Err(Error::invalid(format!(
            "tree partition needs levels >= {TREE_ROOT_LEVEL} and side divisible by 2^levels, got side={side}, levels={levels}"
        )));
    }
    let block = side >> TREE_ROOT_LEVEL;
    let mut sets = Vec::new();
    let mut roles = Vec::new();
    let mut roots = Vec::new();

    let coarse: Vec<usize> = (0..block)
        .flat_map(|r| (0..block).map(move |c| r * side + c))
        .collect();
    sets.push(coarse);
    roles.push(SetRole::Coarse);
    roots.push(None);

    for orientation in 0..3 {
        for row in 0..block {
            for col in 0..block {
                let mut set = Vec::with_capacity(21);
                for depth in 0..TREE_ROOT_LEVEL {
                    let level = TREE_ROOT_LEVEL - depth;
                    let span = 1 << depth;
                    for dr in 0..span {
                        for dc in 0..span {
                            set.push(coefficient_index(
                                side,
                                level,
                                orientation,
                                row * span + dr,
                                col * span + dc,
                            ));
                        }
                    }
                }
                set.sort_unstable();
                sets.push(set);
                roles.push(SetRole::Tree);
                roots.push(Some(TreeRoot {
                    orientation,
                    row,
                    col,
                }));
            }
        }
    }
    Ok(TreePartition {
        side,
        levels,
        sets,
        roles,
        roots,
    })
}

/// `s_j = Σ_{l ∈ set j} |proxy_l|` for every set of the partition.
pub fn set_strength(proxy: &[f64], partition: &TreePartition) -> Result<Vec<f64>> {
    if proxy.len() != partition.total() {
        return Err(Error::dims(format!(
            "proxy of length {} against a partition of {} coefficients",
            proxy.len(),
            partition.total()
        )));
    }
    Ok(partition
        .sets
        .iter()
        .map(|set| set.iter().map(|&l| proxy[l].abs()).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_partition_sizes() {
        let p = tree_partition(32, 5).unwrap();
        assert_eq!(p.len(), 49);
        assert_eq!(p.set(0).len(), 16);
        assert_eq!(p.role(0), SetRole::Coarse);
        for i in 1..49 {
            assert_eq!(p.set(i).len(), 21);
            assert_eq!(p.role(i), SetRole::Tree);
        }
        let mut all: Vec<usize> = p.sets().iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..1024).collect::<Vec<_>>());
    }

    #[test]
    fn level_one_indices_in_exactly_one_tree() {
        let p = tree_partition(32, 5).unwrap();
        for o in 0..3 {
            for r in 0..16 {
                for c in 0..16 {
                    let idx = coefficient_index(32, 1, o, r, c);
                    let owners = (0..49).filter(|&s| p.set(s).contains(&idx)).count();
                    assert_eq!(owners, 1);
                    let owner = (0..49).find(|&s| p.set(s).contains(&idx)).unwrap();
                    assert_eq!(p.role(owner), SetRole::Tree);
                }
            }
        }
    }

    #[test]
    fn quadtree_children() {
        let p = tree_partition(32, 5).unwrap();
        for t in p.tree_sets() {
            let root = p.root(t).unwrap();
            let set = p.set(t);
            for level in [3, 2] {
                let span = 1 << (3 - level);
                for dr in 0..span {
                    for dc in 0..span {
                        let (r, c) = (root.row * span + dr, root.col * span + dc);
                        assert!(set.contains(&p.coefficient_index(level, root.orientation, r, c)));
                        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                            let child = p.coefficient_index(level - 1, root.orientation, 2 * r + a, 2 * c + b);
                            assert!(set.contains(&child));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generalised_partition() {
        let p = tree_partition(16, 3).unwrap();
        assert_eq!(p.set(0).len(), 4);
        assert_eq!(p.len(), 1 + 12);
        assert!(tree_partition(32, 2).is_err());
        assert!(tree_partition(24, 5).is_err());
    }

    #[test]
    fn strengths() {
        let p = tree_partition(32, 5).unwrap();
        assert!(set_strength(&[0.0; 1024], &p).unwrap().iter().all(|&s| s == 0.0));
        let mut ind = vec![0.0; 1024];
        for &i in p.set(7) {
            ind[i] = -1.0;
        }
        let s = set_strength(&ind, &p).unwrap();
        for (j, v) in s.iter().enumerate() {
            assert_eq!(*v, if j == 7 { 21.0 } else { 0.0 });
        }
        assert!(set_strength(&[0.0; 10], &p).is_err());
    }

    #[test]
    fn text_export_round_trip() {
        let p = tree_partition(32, 5).unwrap();
        let text = p.to_text();
        assert_eq!(text.lines().count(), 49);
        assert!(text.starts_with("coarse 0 1 2 3 32 "));
        let parsed = TreePartition::parse_sets(&text).unwrap();
        for (i, (role, set)) in parsed.iter().enumerate() {
            assert_eq!(*role, p.role(i));
            assert_eq!(set.as_slice(), p.set(i));
        }
        assert!(TreePartition::parse_sets("tree 0 1\ntree 1\n").is_err());
        assert!(TreePartition::parse_sets("leaf 0\n").is_err());
    }
}
