//! Grid concatenation of H-codes.
//!
//! Sites sit on a `dims[0] x dims[1] x ...` grid. Level 1 encodes every
//! line along dimension 0; level 2 encodes every line of level-1 logical
//! qubits along dimension 1, and so on. An entity at level `L` is indexed
//! by coordinates whose first `L` entries are logical indices `0..k_d`
//! and whose remaining entries are grid positions. Linear indices put
//! coordinate 0 fastest.
//!
//! For geometry, logical qubit `i` of a block is placed at that block's
//! index site `i + 4`; every block is then a line of physical sites and
//! lines from different levels cross in at most one site.

use std::collections::HashSet;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::hcodes::{
    check_block_length, hcode_check_supports, hcode_logical_support, StabilizerCode,
};
use crate::pauli::{PauliString, MAX_QUBITS};

pub const MAX_LEVELS: usize = 4;

/// Default enumeration cap for `y_distance` (log2 of nullspace size).
pub const DEFAULT_NULLSPACE_CAP: usize = 24;

/// One encoding block at some level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based concatenation level.
    pub level: usize,
    /// Entity ids (at the block's input level) in block position order.
    pub members: Vec<usize>,
    /// Entity ids at the next level produced by this block, by logical index.
    pub outputs: Vec<usize>,
    /// Physical sites making up the block's geometric line.
    pub line: Vec<usize>,
}

/// A Y-type parity check lifted to physical sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YCheck {
    pub level: usize,
    pub block: usize,
    pub support: BitVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCode {
    dims: Vec<usize>,
    n_sites: usize,
    blocks: Vec<Vec<Block>>,
    y_checks: Vec<YCheck>,
    /// Per encoded qubit: physical sites whose Y-parity is that qubit's logical Y bit.
    logical_reads: Vec<BitVec>,
    encoded_index: Vec<Vec<usize>>,
}

/// Result of running the level-by-level syndrome on a Y pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchicalSyndrome {
    /// Level at which detection happened, or the top level if undetected.
    pub level: usize,
    pub detected: bool,
    /// Logical Y flips on the encoded qubits; all zero when detected.
    pub logical_y_bits: BitVec,
}

fn shape_at(dims: &[usize], level: usize) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .map(|(d, &n)| if d < level { n - 4 } else { n })
        .collect()
}

fn linear(coords: &[usize], shape: &[usize]) -> usize {
    coords
        .iter()
        .zip(shape)
        .rev()
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

fn unlinear(mut idx: usize, shape: &[usize]) -> Vec<usize> {
    shape
        .iter()
        .map(|&s| {
            let c = idx % s;
            idx /= s;
            c
        })
        .collect()
}

/// Generators whose span is the undetected Y space of one H-block: the
/// logical representatives first, then the two stabilizer Y-lifts.
fn block_echelon(n: usize) -> Echelon {
    let k = n - 4;
    let mut rows: Vec<BitVec> = (0..k)
        .map(|i| BitVec::from_indices(n, hcode_logical_support(i)))
        .collect();
    let [short, long] = hcode_check_supports(n);
    rows.push(BitVec::from_indices(n, short));
    rows.push(BitVec::from_indices(n, long));
    Echelon::new(n, &rows)
}

pub fn build_grid_code(dims: &[usize]) -> Result<GridCode> {
    if dims.is_empty() || dims.len() > MAX_LEVELS {
        return Err(Error::usage(format!(
            "grid needs 1..={MAX_LEVELS} dimensions, got {}",
            dims.len()
        )));
    }
    for &n in dims {
        check_block_length(n)?;
    }
    let n_sites = dims
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .filter(|&s| s <= MAX_QUBITS)
        .ok_or_else(|| Error::usage(format!("grid {dims:?} exceeds {MAX_QUBITS} sites")))?;
    let t = dims.len();

    // reads[e]: physical functional of entity e at the current level
    let mut reads: Vec<BitVec> = (0..n_sites)
        .map(|s| BitVec::from_indices(n_sites, [s]))
        .collect();
    let mut blocks = Vec::with_capacity(t);
    let mut y_checks = Vec::new();

    for level in 0..t {
        let shape_in = shape_at(dims, level);
        let shape_out = shape_at(dims, level + 1);
        let n = dims[level];
        let k = n - 4;
        let [short, long] = hcode_check_supports(n);
        let n_out: usize = shape_out.iter().product();
        let mut next_reads = vec![BitVec::zeros(n_sites); n_out];
        let mut level_blocks = Vec::new();

        let n_in: usize = shape_in.iter().product();
        for anchor in 0..n_in {
            let coords = unlinear(anchor, &shape_in);
            if coords[level] != 0 {
                continue;
            }
            let members: Vec<usize> = (0..n)
                .map(|p| {
                    let mut c = coords.clone();
                    c[level] = p;
                    linear(&c, &shape_in)
                })
                .collect();
            let outputs: Vec<usize> = (0..k)
                .map(|i| {
                    let mut c = coords.clone();
                    c[level] = i;
                    linear(&c, &shape_out)
                })
                .collect();
            let line: Vec<usize> = (0..n)
                .map(|p| {
                    let mut c = coords.clone();
                    for slot in c.iter_mut().take(level) {
                        *slot += 4;
                    }
                    c[level] = p;
                    linear(&c, dims)
                })
                .collect();
            let block_id = level_blocks.len();
            for support in [&short, &long] {
                let mut acc = BitVec::zeros(n_sites);
                for &p in support {
                    acc.xor_assign(&reads[members[p]]);
                }
                y_checks.push(YCheck {
                    level: level + 1,
                    block: block_id,
                    support: acc,
                });
            }
            for (i, &out) in outputs.iter().enumerate() {
                for p in hcode_logical_support(i) {
                    next_reads[out].xor_assign(&reads[members[p]]);
                }
            }
            level_blocks.push(Block {
                level: level + 1,
                members,
                outputs,
                line,
            });
        }
        blocks.push(level_blocks);
        reads = next_reads;
    }

    let top = shape_at(dims, t);
    let encoded_index = (0..reads.len()).map(|e| unlinear(e, &top)).collect();
    let grid = GridCode {
        dims: dims.to_vec(),
        n_sites,
        blocks,
        y_checks,
        logical_reads: reads,
        encoded_index,
    };
    if let Some((a, b)) = grid.overlap_violation() {
        return Err(Error::usage(format!(
            "sites {a} and {b} share more than one encoding block"
        )));
    }
    Ok(grid)
}

impl GridCode {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_encoded(&self) -> usize {
        self.logical_reads.len()
    }

    pub fn blocks(&self, level: usize) -> &[Block] {
        &self.blocks[level - 1]
    }

    pub fn y_checks(&self) -> &[YCheck] {
        &self.y_checks
    }

    pub fn logical_reads(&self) -> &[BitVec] {
        &self.logical_reads
    }

    /// Logical index tuple of encoded qubit `q`.
    pub fn encoded_index(&self, q: usize) -> &[usize] {
        &self.encoded_index[q]
    }

    pub fn site_index(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.dims.len());
        linear(coords, &self.dims)
    }

    pub fn site_coords(&self, site: usize) -> Vec<usize> {
        unlinear(site, &self.dims)
    }

    /// First pair of sites found sharing two or more blocks, if any.
    pub fn overlap_violation(&self) -> Option<(usize, usize)> {
        let mut seen = HashSet::new();
        for block in self.blocks.iter().flatten() {
            for (i, &a) in block.line.iter().enumerate() {
                for &b in &block.line[i + 1..] {
                    let key = (a.min(b), a.max(b));
                    if !seen.insert(key) {
                        return Some(key);
                    }
                }
            }
        }
        None
    }

    /// The concatenated CSS code: one X and one Z generator on each Y-check
    /// support, logical X/Z on each encoded qubit's read support.
    pub fn stabilizer_code(&self) -> Result<StabilizerCode> {
        let n = self.n_sites;
        let mut stabs = Vec::with_capacity(2 * self.y_checks.len());
        for c in &self.y_checks {
            stabs.push(PauliString::xs(n, c.support.ones()));
            stabs.push(PauliString::zs(n, c.support.ones()));
        }
        let lx = self
            .logical_reads
            .iter()
            .map(|r| PauliString::xs(n, r.ones()))
            .collect();
        let lz = self
            .logical_reads
            .iter()
            .map(|r| PauliString::zs(n, r.ones()))
            .collect();
        StabilizerCode::from_parts_unchecked(stabs, lx, lz)
    }

    /// Every Y check arises from an X/Z stabilizer pair with identical support.
    pub fn checks_are_matched_pairs(&self) -> Result<bool> {
        let code = self.stabilizer_code()?;
        Ok(code.stabilizers().chunks(2).all(|pair| {
            pair[0].x_bits() == pair[1].z_bits()
                && pair[0].z_bits().is_zero()
                && pair[1].x_bits().is_zero()
        }))
    }

    /// Whether a Y pattern passes all lifted checks.
    pub fn passes_checks(&self, pattern: &BitVec) -> bool {
        self.y_checks.iter().all(|c| !c.support.dot(pattern))
    }

    /// Logical Y action read off with the lifted functionals; meaningful
    /// only for patterns that pass all checks.
    pub fn logical_action(&self, pattern: &BitVec) -> BitVec {
        BitVec::from_bools(
            &self
                .logical_reads
                .iter()
                .map(|r| r.dot(pattern))
                .collect::<Vec<_>>(),
        )
    }
}

/// Runs the block-by-block syndrome from the physical level upward.
///
/// Inside each block a Y pattern is detected if it has odd overlap with
/// either stabilizer support. Otherwise it is rewritten over the block's
/// logical Y representatives plus stabilizer lifts, and the logical part
/// becomes the next level's pattern.
pub fn hierarchical_syndrome(grid: &GridCode, y_pattern: &BitVec) -> Result<HierarchicalSyndrome> {
    if y_pattern.len() != grid.n_sites {
        return Err(Error::usage(format!(
            "pattern has {} bits, grid has {} sites",
            y_pattern.len(),
            grid.n_sites
        )));
    }
    let mut bits = y_pattern.clone();
    for (lvl, level_blocks) in grid.blocks.iter().enumerate() {
        let n = grid.dims[lvl];
        let k = n - 4;
        let [short, long] = hcode_check_supports(n);
        let echelon = block_echelon(n);
        let n_out: usize = shape_at(&grid.dims, lvl + 1).iter().product();
        let mut next = BitVec::zeros(n_out);
        for block in level_blocks {
            let local = BitVec::from_bools(
                &block
                    .members
                    .iter()
                    .map(|&m| bits.get(m))
                    .collect::<Vec<_>>(),
            );
            let odd = |s: &[usize]| s.iter().filter(|&&p| local.get(p)).count() % 2 == 1;
            let combo = if odd(&short) || odd(&long) {
                None
            } else {
                echelon.solve(&local)
            };
            let Some(combo) = combo else {
                return Ok(HierarchicalSyndrome {
                    level: lvl + 1,
                    detected: true,
                    logical_y_bits: BitVec::zeros(grid.n_encoded()),
                });
            };
            for i in 0..k {
                if combo.get(i) {
                    next.set(block.outputs[i], true);
                }
            }
        }
        bits = next;
    }
    Ok(HierarchicalSyndrome {
        level: grid.levels(),
        detected: false,
        logical_y_bits: bits,
    })
}

/// Minimum weight of a Y pattern that passes every check but flips at
/// least one encoded qubit.
///
/// Enumerates the check nullspace when its dimension is at most
/// `nullspace_cap`; otherwise searches patterns by increasing weight up to
/// `weight_cap`.
pub fn y_distance(grid: &GridCode, weight_cap: usize) -> Result<usize> {
    y_distance_with_cap(grid, weight_cap, DEFAULT_NULLSPACE_CAP)
}

pub fn y_distance_with_cap(
    grid: &GridCode,
    weight_cap: usize,
    nullspace_cap: usize,
) -> Result<usize> {
    let checks = crate::gf2::BitMatrix::from_rows(
        grid.n_sites,
        grid.y_checks.iter().map(|c| c.support.clone()).collect(),
    );
    let basis = checks.nullspace();
    if basis.len() <= nullspace_cap {
        return nullspace_min_weight(grid, &basis);
    }
    weight_bounded_search(grid, weight_cap)
}

fn nullspace_min_weight(grid: &GridCode, basis: &[BitVec]) -> Result<usize> {
    let mut cur = BitVec::zeros(grid.n_sites);
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << basis.len()) {
        cur.xor_assign(&basis[step.trailing_zeros() as usize]);
        let w = cur.count_ones();
        if w < best && grid.logical_reads.iter().any(|r| r.dot(&cur)) {
            best = w;
        }
    }
    if best == usize::MAX {
        return Err(Error::usage("grid has no nontrivial undetected Y patterns"));
    }
    Ok(best)
}

fn weight_bounded_search(grid: &GridCode, weight_cap: usize) -> Result<usize> {
    let n = grid.n_sites;
    let syndrome_len = grid.y_checks.len() + grid.logical_reads.len();
    // column signature of each site: (check parities, logical parities)
    let cols: Vec<BitVec> = (0..n)
        .map(|s| {
            BitVec::from_bools(
                &grid
                    .y_checks
                    .iter()
                    .map(|c| c.support.get(s))
                    .chain(grid.logical_reads.iter().map(|r| r.get(s)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let n_checks = grid.y_checks.len();
    for w in 1..=weight_cap {
        let mut acc = vec![BitVec::zeros(syndrome_len); w + 1];
        if search_weight(&cols, n_checks, w, 0, 0, &mut acc) {
            return Ok(w);
        }
    }
    Err(Error::usage(format!(
        "no nontrivial undetected Y pattern of weight <= {weight_cap}; raise the cap"
    )))
}

fn search_weight(
    cols: &[BitVec],
    n_checks: usize,
    remaining: usize,
    start: usize,
    depth: usize,
    acc: &mut Vec<BitVec>,
) -> bool {
    if remaining == 0 {
        let s = &acc[depth];
        let checks_clear = s.ones().all(|i| i >= n_checks);
        return checks_clear && s.ones().any(|i| i >= n_checks);
    }
    for site in start..=cols.len() - remaining {
        let next = acc[depth].xor(&cols[site]);
        acc[depth + 1] = next;
        if search_weight(cols, n_checks, remaining - 1, site + 1, depth + 1, acc) {
            return true;
        }
    }
    false
}
