//! Classical ε-machines over a finite emission alphabet.
//!
//! An ε-machine is a set of causal states `S_0 .. S_{N-1}` together with a
//! transition tensor `T[j][r][k]`: the probability that a machine in state
//! `S_j` emits symbol `r` and moves to state `S_k`. Every row `(j, ·, ·)`
//! sums to one. The statistical complexity `C_mu` of the process is the
//! Shannon entropy of the stationary distribution over causal states, taken
//! after statistically equivalent states have been merged.
//!
//! This module provides the machine representation, the stationary solver
//! (dense null-space solve with a power-iteration cross-check), bisimulation
//! state merging, entropy, and seeded trajectory sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Row sums of a transition tensor must equal one within this tolerance.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// The stationary solver guarantees `‖p − pA‖∞` below this bound.
pub const STATIONARY_RESIDUAL_TOL: f64 = 1e-10;

/// Default total-variation tolerance for state merging. The equivalence is
/// exact in theory; a strictly positive tolerance absorbs floating-point
/// noise in rows that are identical analytically.
pub const DEFAULT_MERGE_TOL: f64 = 1e-9;

const POWER_ITERATION_TOL: f64 = 1e-13;
const POWER_ITERATION_CAP: usize = 1_000_000;

/// Name of the seeded generator used by [`sample`], recorded in sequence
/// origin metadata.
pub const SAMPLE_RNG: &str = "chacha8";

/// An ordered finite set of emission symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("repeated symbol {s:?}")));
            }
        }
        Ok(Self { symbols })
    }

    /// The binary alphabet `{'0', '1'}`.
    pub fn binary() -> Self {
        Self { symbols: vec!['0', '1'] }
    }

    /// Alphabet `'0', '1', ..` of the given size (at most 10 symbols).
    pub fn of_size(size: usize) -> Result<Self> {
        if size == 0 || size > 10 {
            return Err(Error::InvalidAlphabet(format!(
                "size {size} outside supported range 1..=10"
            )));
        }
        Ok(Self {
            symbols: (0..size)
                .map(|i| char::from_digit(i as u32, 10).unwrap())
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Index of a symbol, if it belongs to the alphabet.
    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }
}

/// A classical ε-machine: causal states plus the transition tensor
/// `T[j][r][k] = P(next state = k, emission = r | current state = j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonMachine {
    alphabet: Alphabet,
    num_states: usize,
    /// Flat tensor, index `(j, r, k) -> j·|Σ|·N + r·N + k`.
    transitions: Vec<f64>,
}

impl EpsilonMachine {
    /// Builds a machine from a flat `(j, r, k)`-indexed tensor, validating
    /// entry ranges and row normalization.
    pub fn new(alphabet: Alphabet, num_states: usize, transitions: Vec<f64>) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidMachine("machine needs at least one state".into()));
        }
        let expected = num_states * alphabet.len() * num_states;
        if transitions.len() != expected {
            return Err(Error::InvalidMachine(format!(
                "tensor has {} entries, expected {expected}",
                transitions.len()
            )));
        }
        for (idx, &p) in transitions.iter().enumerate() {
            if !(0.0..=1.0 + ROW_SUM_TOL).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidMachine(format!(
                    "entry {idx} = {p} outside [0, 1]"
                )));
            }
        }
        let row_len = alphabet.len() * num_states;
        for j in 0..num_states {
            let sum: f64 = transitions[j * row_len..(j + 1) * row_len].iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidMachine(format!(
                    "row {j} sums to {sum}, expected 1"
                )));
            }
        }
        Ok(Self { alphabet, num_states, transitions })
    }

    /// Convenience constructor from sparse `(j, r, k, probability)` records;
    /// unspecified entries are zero.
    pub fn from_triples(
        alphabet: Alphabet,
        num_states: usize,
        entries: &[(usize, usize, usize, f64)],
    ) -> Result<Self> {
        let mut t = vec![0.0; num_states * alphabet.len() * num_states];
        for &(j, r, k, p) in entries {
            if j >= num_states || k >= num_states || r >= alphabet.len() {
                return Err(Error::InvalidMachine(format!(
                    "index ({j}, {r}, {k}) out of range"
                )));
            }
            t[j * alphabet.len() * num_states + r * num_states + k] = p;
        }
        Self::new(alphabet, num_states, t)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `T[j][r][k]`.
    pub fn prob(&self, j: usize, r: usize, k: usize) -> f64 {
        self.transitions[j * self.alphabet.len() * self.num_states + r * self.num_states + k]
    }

    /// The full outgoing row of state `j`, indexed `r·N + k`.
    pub fn row(&self, j: usize) -> &[f64] {
        let row_len = self.alphabet.len() * self.num_states;
        &self.transitions[j * row_len..(j + 1) * row_len]
    }

    /// State-to-state probability with the emission marginalized out.
    pub fn marginal_transition(&self, j: usize, k: usize) -> f64 {
        (0..self.alphabet.len()).map(|r| self.prob(j, r, k)).sum()
    }

    /// Probability of emitting `r` from state `j`, successor marginalized.
    pub fn emission_prob(&self, j: usize, r: usize) -> f64 {
        (0..self.num_states).map(|k| self.prob(j, r, k)).sum()
    }

    /// True when every `(state, symbol)` pair has at most one successor.
    pub fn is_unifilar(&self) -> bool {
        for j in 0..self.num_states {
            for r in 0..self.alphabet.len() {
                let successors = (0..self.num_states)
                    .filter(|&k| self.prob(j, r, k) > 0.0)
                    .count();
                if successors > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Plain-text tensor listing for debugging: one `j r k probability`
    /// record per nonzero entry, probabilities with 17 significant digits.
    pub fn tensor_text(&self) -> String {
        let mut out = String::new();
        for j in 0..self.num_states {
            for r in 0..self.alphabet.len() {
                for k in 0..self.num_states {
                    let p = self.prob(j, r, k);
                    if p != 0.0 {
                        out.push_str(&format!("{j} {r} {k} {:.16e}\n", p));
                    }
                }
            }
        }
        out
    }

    /// Stable content fingerprint (FNV-1a over the tensor listing), used to
    /// tag sampled sequences with their generating machine.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.tensor_text().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// A probability vector over causal states.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    weights: Vec<f64>,
}

impl StationaryDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidMachine("empty distribution".into()));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidMachine("negative distribution entry".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > ROW_SUM_TOL {
            return Err(Error::InvalidMachine(format!(
                "distribution sums to {sum}, expected 1"
            )));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Provenance metadata attached to sampled sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceOrigin {
    pub seed: u64,
    pub machine_id: String,
    pub rng: &'static str,
}

/// A finite run of emissions, stored as alphabet indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSequence {
    alphabet: Alphabet,
    symbols: Vec<usize>,
    origin: Option<SequenceOrigin>,
}

impl SymbolSequence {
    pub fn new(alphabet: Alphabet, symbols: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet.len()) {
            return Err(Error::InvalidSequence(format!(
                "symbol index {bad} outside alphabet of size {}",
                alphabet.len()
            )));
        }
        Ok(Self { alphabet, symbols, origin: None })
    }

    /// Parses a sequence from its canonical text form (one character per
    /// symbol; a trailing newline is permitted).
    pub fn from_text(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let trimmed = text.trim_end_matches(['\n', '\r']);
        let mut symbols = Vec::with_capacity(trimmed.len());
        for c in trimmed.chars() {
            match alphabet.index_of(c) {
                Some(i) => symbols.push(i),
                None => {
                    return Err(Error::InvalidSequence(format!(
                        "character {c:?} not in alphabet"
                    )))
                }
            }
        }
        Ok(Self { alphabet: alphabet.clone(), symbols, origin: None })
    }

    /// Canonical text form: one character per symbol, no newline.
    pub fn to_text(&self) -> String {
        self.symbols.iter().map(|&s| self.alphabet.symbol(s)).collect()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn origin(&self) -> Option<&SequenceOrigin> {
        self.origin.as_ref()
    }
}

/// Where a sampled trajectory begins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartState {
    /// Start in a fixed causal state.
    Index(usize),
    /// Draw the initial state from the stationary distribution.
    Stationary,
}

/// Solves `p = pA` for the state-to-state chain `A[j][k]` by a dense
/// null-space solve, requiring a single closed communicating class.
///
/// Transient states receive weight zero; the result is normalized and its
/// residual is checked against [`STATIONARY_RESIDUAL_TOL`].
pub fn stationary(machine: &EpsilonMachine) -> Result<StationaryDistribution> {
    let n = machine.num_states();
    if closed_class_count(machine) != 1 {
        return Err(Error::NonUniqueStationary(format!(
            "{} closed communicating classes",
            closed_class_count(machine)
        )));
    }
    // Rows of (Aᵀ − I) sum to zero, so any one equation is redundant and can
    // be replaced with the normalization row.
    let mut mat = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            mat[i * n + j] = machine.marginal_transition(j, i) - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        mat[(n - 1) * n + j] = 1.0;
    }
    rhs[n - 1] = 1.0;
    let mut p = solve_dense(&mut mat, &mut rhs, n)?;
    for w in p.iter_mut() {
        // Exact zeros for transient states can come out as tiny negatives.
        if *w < 0.0 {
            if *w < -1e-12 {
                return Err(Error::NonUniqueStationary(format!(
                    "solver produced negative weight {w}"
                )));
            }
            *w = 0.0;
        }
    }
    let total: f64 = p.iter().sum();
    for w in p.iter_mut() {
        *w /= total;
    }
    let residual = stationary_residual(machine, &p);
    if residual > STATIONARY_RESIDUAL_TOL {
        return Err(Error::InvalidMachine(format!(
            "stationary residual {residual} exceeds {STATIONARY_RESIDUAL_TOL}"
        )));
    }
    StationaryDistribution::new(p)
}

/// Power-iteration cross-check for [`stationary`]: iterates the lazy chain
/// `(A + I)/2` (same fixed point, aperiodic) to tolerance 1e-13, capped at
/// 10^6 iterations.
pub fn stationary_power_iteration(machine: &EpsilonMachine) -> Result<StationaryDistribution> {
    let n = machine.num_states();
    if closed_class_count(machine) != 1 {
        return Err(Error::NonUniqueStationary(
            "multiple closed communicating classes".into(),
        ));
    }
    let mut p = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..POWER_ITERATION_CAP {
        for k in 0..n {
            let mut acc = 0.5 * p[k];
            for (j, &pj) in p.iter().enumerate() {
                acc += 0.5 * pj * machine.marginal_transition(j, k);
            }
            next[k] = acc;
        }
        let delta = p
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut p, &mut next);
        if delta <= POWER_ITERATION_TOL {
            break;
        }
    }
    let total: f64 = p.iter().sum();
    for w in p.iter_mut() {
        *w /= total;
    }
    StationaryDistribution::new(p)
}

/// `‖p − pA‖∞` for the marginal state chain.
pub fn stationary_residual(machine: &EpsilonMachine, weights: &[f64]) -> f64 {
    let n = machine.num_states();
    (0..n)
        .map(|k| {
            let image: f64 = (0..n)
                .map(|j| weights[j] * machine.marginal_transition(j, k))
                .sum();
            (weights[k] - image).abs()
        })
        .fold(0.0, f64::max)
}

/// Shannon entropy in bits, with `0·log 0 := 0`.
pub fn shannon_entropy(dist: &StationaryDistribution) -> f64 {
    dist.weights()
        .iter()
        .filter(|&&p| p > 0.0)
        .fold(0.0, |acc, &p| acc - p * p.log2())
}

/// Merges statistically equivalent states by partition refinement
/// (bisimulation): starting from a single block, states are split whenever
/// their next-(symbol, successor-block) distributions differ by more than
/// `tol` in total variation, until a fixpoint is reached.
///
/// Returns the quotient machine together with the state-to-block map.
/// Quotient rows are the average of their members' block-aggregated rows,
/// so row normalization is preserved exactly.
pub fn merge_equivalent_states_with_map(
    machine: &EpsilonMachine,
    tol: f64,
) -> (EpsilonMachine, Vec<usize>) {
    let tol = tol.max(0.0);
    let n = machine.num_states();
    let a = machine.alphabet().len();
    let mut block = vec![0usize; n];
    let mut num_blocks = 1usize;

    loop {
        // Distribution of (emission, successor block) for each state.
        let mut sigs = vec![vec![0.0; a * num_blocks]; n];
        for (j, sig) in sigs.iter_mut().enumerate() {
            for r in 0..a {
                for k in 0..n {
                    sig[r * num_blocks + block[k]] += machine.prob(j, r, k);
                }
            }
        }
        // Split each block greedily: a state joins the first sub-block whose
        // representative matches within tol, else founds a new one.
        let mut new_block = vec![usize::MAX; n];
        let mut next_id = 0usize;
        for b in 0..num_blocks {
            let mut reps: Vec<usize> = Vec::new();
            for j in (0..n).filter(|&j| block[j] == b) {
                let assigned = reps
                    .iter()
                    .find(|&&rep| total_variation(&sigs[j], &sigs[rep]) <= tol)
                    .map(|&rep| new_block[rep]);
                match assigned {
                    Some(id) => new_block[j] = id,
                    None => {
                        new_block[j] = next_id;
                        reps.push(j);
                        next_id += 1;
                    }
                }
            }
        }
        if next_id == num_blocks {
            break;
        }
        block = new_block;
        num_blocks = next_id;
    }

    // Relabel blocks in order of their smallest member, for stable output.
    let mut order: Vec<usize> = (0..num_blocks).collect();
    let first_member: Vec<usize> = (0..num_blocks)
        .map(|b| (0..n).find(|&j| block[j] == b).unwrap())
        .collect();
    order.sort_by_key(|&b| first_member[b]);
    let mut relabel = vec![0usize; num_blocks];
    for (new_id, &b) in order.iter().enumerate() {
        relabel[b] = new_id;
    }
    for b in block.iter_mut() {
        *b = relabel[*b];
    }

    let m = num_blocks;
    let mut tensor = vec![0.0; m * a * m];
    let mut members = vec![0usize; m];
    for j in 0..n {
        let bj = block[j];
        members[bj] += 1;
        for r in 0..a {
            for k in 0..n {
                tensor[bj * a * m + r * m + block[k]] += machine.prob(j, r, k);
            }
        }
    }
    for bj in 0..m {
        let count = members[bj] as f64;
        for v in tensor[bj * a * m..(bj + 1) * a * m].iter_mut() {
            *v /= count;
        }
    }
    let quotient = EpsilonMachine::new(machine.alphabet().clone(), m, tensor)
        .expect("quotient rows stay normalized");
    (quotient, block)
}

/// [`merge_equivalent_states_with_map`] without the block map.
pub fn merge_equivalent_states(machine: &EpsilonMachine, tol: f64) -> EpsilonMachine {
    merge_equivalent_states_with_map(machine, tol).0
}

/// Statistical complexity `C_mu` in bits: the entropy of the stationary
/// distribution of the merged machine.
pub fn statistical_complexity(machine: &EpsilonMachine, tol: f64) -> Result<f64> {
    let merged = merge_equivalent_states(machine, tol);
    Ok(shannon_entropy(&stationary(&merged)?))
}

/// Samples a trajectory of `length` emissions, deterministic per seed.
///
/// At each step the `(emission, successor)` pair is drawn from the current
/// state's row. The RNG is ChaCha8 seeded from `seed`; the algorithm name is
/// recorded in the sequence origin.
pub fn sample(
    machine: &EpsilonMachine,
    start: StartState,
    length: usize,
    seed: u64,
) -> Result<SymbolSequence> {
    let n = machine.num_states();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = match start {
        StartState::Index(i) if i < n => i,
        StartState::Index(i) => return Err(Error::InvalidStart { index: i, num_states: n }),
        StartState::Stationary => {
            let dist = stationary(machine)?;
            draw_index(&mut rng, dist.weights())
        }
    };
    let mut symbols = Vec::with_capacity(length);
    for _ in 0..length {
        let pair = draw_index(&mut rng, machine.row(state));
        symbols.push(pair / n);
        state = pair % n;
    }
    Ok(SymbolSequence {
        alphabet: machine.alphabet().clone(),
        symbols,
        origin: Some(SequenceOrigin {
            seed,
            machine_id: machine.fingerprint(),
            rng: SAMPLE_RNG,
        }),
    })
}

/// Inverse-CDF draw over nonnegative weights summing to ~1. Falls back to
/// the last positive entry if rounding leaves the cumulative sum short.
fn draw_index(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last_positive = i;
        acc += w;
        if u < acc {
            return i;
        }
    }
    last_positive
}

/// Total-variation distance `½ Σ |a_i − b_i|`.
fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Number of closed communicating classes of the marginal state chain.
fn closed_class_count(machine: &EpsilonMachine) -> usize {
    let n = machine.num_states();
    // Reachability closure; n is tiny so the cubic pass is fine.
    let mut reach = vec![false; n * n];
    for j in 0..n {
        reach[j * n + j] = true;
        for k in 0..n {
            if machine.marginal_transition(j, k) > 0.0 {
                reach[j * n + k] = true;
            }
        }
    }
    for mid in 0..n {
        for i in 0..n {
            if reach[i * n + mid] {
                for j in 0..n {
                    if reach[mid * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut num_classes = 0;
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = num_classes;
        for j in i + 1..n {
            if reach[i * n + j] && reach[j * n + i] {
                class[j] = num_classes;
            }
        }
        num_classes += 1;
    }
    (0..num_classes)
        .filter(|&c| {
            (0..n).filter(|&j| class[j] == c).all(|j| {
                (0..n).all(|k| class[k] == c || machine.marginal_transition(j, k) == 0.0)
            })
        })
        .count()
}

/// Gaussian elimination with partial pivoting; `mat` is row-major n×n.
fn solve_dense(mat: &mut [f64], rhs: &mut [f64], n: usize) -> Result<Vec<f64>> {
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                mat[a * n + col]
                    .abs()
                    .partial_cmp(&mat[b * n + col].abs())
                    .unwrap()
            })
            .unwrap();
        if mat[pivot_row * n + col].abs() < 1e-14 {
            return Err(Error::NonUniqueStationary(
                "singular stationary system".into(),
            ));
        }
        if pivot_row != col {
            for j in 0..n {
                mat.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        for row in col + 1..n {
            let factor = mat[row * n + col] / mat[col * n + col];
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                mat[row * n + j] -= factor * mat[col * n + j];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in row + 1..n {
            acc -= mat[row * n + j] * x[j];
        }
        x[row] = acc / mat[row * n + row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::{perturbed_coin_machine, CoinParams};

    fn coin(q0: f64, q1: f64) -> EpsilonMachine {
        perturbed_coin_machine(&CoinParams::new(q0, q1).unwrap())
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(vec![]).is_err());
        assert!(Alphabet::new(vec!['0', '0']).is_err());
        let a = Alphabet::new(vec!['a', 'b']).unwrap();
        assert_eq!(a.index_of('b'), Some(1));
        assert_eq!(a.index_of('c'), None);
    }

    #[test]
    fn constructor_validates_rows() {
        let a = Alphabet::binary();
        // Row sums to 0.9.
        let t = vec![0.9, 0.0, 0.0, 0.0, 0.0, 0.6, 0.4, 0.0];
        assert!(matches!(
            EpsilonMachine::new(a.clone(), 2, t),
            Err(Error::InvalidMachine(_))
        ));
        // Negative entry.
        let t = vec![1.1, -0.1, 0.0, 0.0, 0.0, 0.6, 0.4, 0.0];
        assert!(EpsilonMachine::new(a, 2, t).is_err());
    }

    #[test]
    fn coin_machine_is_unifilar() {
        let m = coin(0.2, 0.6);
        assert!(m.is_unifilar());
        assert_eq!(m.prob(0, 0, 0), 0.8);
        assert_eq!(m.prob(0, 1, 1), 0.2);
        assert_eq!(m.prob(1, 0, 0), 0.6);
        assert_eq!(m.prob(1, 1, 1), 0.4);
    }

    #[test]
    fn stationary_matches_closed_form_and_power_iteration() {
        let m = coin(0.2, 0.6);
        let p = stationary(&m).unwrap();
        // p0 = q1/(q0+q1) = 0.75.
        assert!((p.weights()[0] - 0.75).abs() < 1e-12);
        assert!((p.weights()[1] - 0.25).abs() < 1e-12);
        let q = stationary_power_iteration(&m).unwrap();
        for (a, b) in p.weights().iter().zip(q.weights()) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(stationary_residual(&m, p.weights()) <= STATIONARY_RESIDUAL_TOL);
    }

    #[test]
    fn stationary_symmetric_coin_is_uniform() {
        for q in [0.1, 0.3, 0.7] {
            let p = stationary(&coin(q, q)).unwrap();
            assert!((p.weights()[0] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn stationary_absorbing_state() {
        let p = stationary(&coin(0.0, 0.3)).unwrap();
        assert_eq!(p.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn stationary_rejects_two_closed_classes() {
        assert!(matches!(
            stationary(&coin(0.0, 0.0)),
            Err(Error::NonUniqueStationary(_))
        ));
    }

    #[test]
    fn alternator_has_uniform_stationary() {
        // Period-2 chain: the dense solve is exact, the lazy power iteration
        // converges despite the periodicity.
        let m = coin(1.0, 1.0);
        let p = stationary(&m).unwrap();
        assert!((p.weights()[0] - 0.5).abs() < 1e-12);
        let q = stationary_power_iteration(&m).unwrap();
        assert!((q.weights()[0] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn entropy_examples() {
        let e = shannon_entropy(&StationaryDistribution::new(vec![0.5, 0.5]).unwrap());
        assert_eq!(e, 1.0);
        let e = shannon_entropy(&StationaryDistribution::new(vec![1.0, 0.0]).unwrap());
        assert_eq!(e, 0.0);
        let e = shannon_entropy(&StationaryDistribution::new(vec![0.75, 0.25]).unwrap());
        assert!((e - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn merge_collapses_fair_coin() {
        let merged = merge_equivalent_states(&coin(0.5, 0.5), 1e-9);
        assert_eq!(merged.num_states(), 1);
        assert!((merged.emission_prob(0, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn merge_keeps_distinct_states() {
        let m = coin(0.2, 0.6);
        let merged = merge_equivalent_states(&m, 1e-9);
        assert_eq!(merged, m);
    }

    #[test]
    fn merge_is_idempotent_and_never_grows() {
        for (q0, q1) in [(0.5, 0.5), (0.2, 0.6), (0.3, 0.3), (1.0, 1.0)] {
            let m = coin(q0, q1);
            let once = merge_equivalent_states(&m, 1e-9);
            let twice = merge_equivalent_states(&once, 1e-9);
            assert!(once.num_states() <= m.num_states());
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn merge_map_points_into_quotient() {
        let (merged, map) = merge_equivalent_states_with_map(&coin(0.5, 0.5), 1e-9);
        assert_eq!(map, vec![0, 0]);
        assert_eq!(merged.num_states(), 1);
    }

    #[test]
    fn statistical_complexity_examples() {
        assert!((statistical_complexity(&coin(0.3, 0.3), 1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(statistical_complexity(&coin(0.5, 0.5), 1e-9).unwrap(), 0.0);
        let c = statistical_complexity(&coin(0.2, 0.6), 1e-9).unwrap();
        assert!((c - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn sample_absorbing_machine_is_constant() {
        let m = coin(0.0, 0.3);
        let s = sample(&m, StartState::Index(0), 10, 7).unwrap();
        assert_eq!(s.to_text(), "0000000000");
    }

    #[test]
    fn sample_alternator() {
        let m = coin(1.0, 1.0);
        let s = sample(&m, StartState::Index(0), 6, 1).unwrap();
        assert_eq!(s.to_text(), "101010");
    }

    #[test]
    fn sample_is_deterministic_per_seed() {
        let m = coin(0.2, 0.6);
        let a = sample(&m, StartState::Stationary, 500, 42).unwrap();
        let b = sample(&m, StartState::Stationary, 500, 42).unwrap();
        let c = sample(&m, StartState::Stationary, 500, 43).unwrap();
        assert_eq!(a.symbols(), b.symbols());
        assert_ne!(a.symbols(), c.symbols());
        let origin = a.origin().unwrap();
        assert_eq!(origin.seed, 42);
        assert_eq!(origin.rng, "chacha8");
        assert_eq!(origin.machine_id, m.fingerprint());
    }

    #[test]
    fn sample_rejects_bad_start() {
        let m = coin(0.2, 0.6);
        assert!(matches!(
            sample(&m, StartState::Index(2), 5, 0),
            Err(Error::InvalidStart { index: 2, num_states: 2 })
        ));
    }

    #[test]
    fn tensor_text_round_trips() {
        let m = coin(0.2, 0.6);
        let text = m.tensor_text();
        let mut entries = Vec::new();
        for line in text.lines() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            assert_eq!(parts.len(), 4);
            entries.push((
                parts[0].parse::<usize>().unwrap(),
                parts[1].parse::<usize>().unwrap(),
                parts[2].parse::<usize>().unwrap(),
                parts[3].parse::<f64>().unwrap(),
            ));
        }
        let rebuilt = EpsilonMachine::from_triples(Alphabet::binary(), 2, &entries).unwrap();
        assert_eq!(rebuilt, m);
    }

    #[test]
    fn sequence_text_round_trip() {
        let a = Alphabet::binary();
        let s = SymbolSequence::from_text("0110\n", &a).unwrap();
        assert_eq!(s.symbols(), &[0, 1, 1, 0]);
        assert_eq!(s.to_text(), "0110");
        assert!(SymbolSequence::from_text("012", &a).is_err());
    }
}
