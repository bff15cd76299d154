//! ε-machine reconstruction from observed symbol sequences.
//!
//! The observer sees only emissions. With a finite history order `L`,
//! candidate causal states are the observed length-`L` histories; their
//! next-symbol statistics are estimated by maximum likelihood from sliding
//! windows, then statistically equivalent histories are merged by the same
//! partition refinement used for analytic machines. Order 1 suffices for
//! Markov processes like the coin family.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::machine::{
    merge_equivalent_states_with_map, statistical_complexity, EpsilonMachine, SymbolSequence,
};
use crate::quantum::quantum_complexity;

/// Default minimum number of observations per history.
pub const DEFAULT_MIN_COUNT: u64 = 100;

/// A length-`L` window of past symbols (alphabet indices, oldest first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct History(Vec<usize>);

impl History {
    pub fn new(symbols: Vec<usize>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    /// The history reached after emitting `symbol`.
    pub fn shift(&self, symbol: usize) -> History {
        let mut next = self.0.clone();
        next.remove(0);
        next.push(symbol);
        History(next)
    }

    pub fn render(&self, alphabet: &crate::machine::Alphabet) -> String {
        self.0.iter().map(|&s| alphabet.symbol(s)).collect()
    }
}

/// Sliding-window counts of (history, next symbol) pairs.
#[derive(Debug, Clone)]
pub struct EmpiricalModel {
    order: usize,
    alphabet: crate::machine::Alphabet,
    /// Per-history counts of each next symbol, keyed deterministically.
    counts: BTreeMap<History, Vec<u64>>,
    /// History of the final window, which has no successor observation.
    tail: History,
}

impl EmpiricalModel {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &crate::machine::Alphabet {
        &self.alphabet
    }

    pub fn histories(&self) -> impl Iterator<Item = &History> {
        self.counts.keys()
    }

    pub fn num_histories(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, history: &History, symbol: usize) -> u64 {
        self.counts.get(history).map_or(0, |row| row[symbol])
    }

    pub fn total(&self, history: &History) -> u64 {
        self.counts.get(history).map_or(0, |row| row.iter().sum())
    }

    /// Maximum-likelihood estimate of `P(symbol | history)`.
    pub fn conditional(&self, history: &History, symbol: usize) -> f64 {
        let total = self.total(history);
        if total == 0 {
            0.0
        } else {
            self.count(history, symbol) as f64 / total as f64
        }
    }
}

/// Counts next-symbol occurrences for every length-`order` history in the
/// sequence. Fails with `TooShort` unless the sequence is longer than
/// `order`.
pub fn estimate_conditionals(seq: &SymbolSequence, order: usize) -> Result<EmpiricalModel> {
    if order == 0 {
        return Err(Error::TooShort("history order must be at least 1".into()));
    }
    let symbols = seq.symbols();
    if symbols.len() <= order {
        return Err(Error::TooShort(format!(
            "sequence of length {} cannot support order {order}",
            symbols.len()
        )));
    }
    let a = seq.alphabet().len();
    let mut counts: BTreeMap<History, Vec<u64>> = BTreeMap::new();
    for t in order..symbols.len() {
        let history = History(symbols[t - order..t].to_vec());
        counts.entry(history).or_insert_with(|| vec![0; a])[symbols[t]] += 1;
    }
    let tail = History(symbols[symbols.len() - order..].to_vec());
    Ok(EmpiricalModel {
        order,
        alphabet: seq.alphabet().clone(),
        counts,
        tail,
    })
}

/// Noise-scaled default merge tolerance: `3·sqrt(max_r p̂(1−p̂)/n)` over all
/// history rows, the 3σ binomial error of the worst-estimated entry.
pub fn default_merge_tolerance(model: &EmpiricalModel) -> f64 {
    let mut worst: f64 = 0.0;
    for history in model.histories() {
        let n = model.total(history) as f64;
        if n == 0.0 {
            continue;
        }
        for symbol in 0..model.alphabet().len() {
            let p = model.conditional(history, symbol);
            worst = worst.max(p * (1.0 - p) / n);
        }
    }
    3.0 * worst.sqrt()
}

/// A reconstructed machine together with the causal-state function
/// mapping each observed history to its state index.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub machine: EpsilonMachine,
    pub state_of_history: BTreeMap<History, usize>,
}

/// Builds the candidate-state machine over observed histories and merges
/// equivalent ones within `merge_tol`, requiring [`DEFAULT_MIN_COUNT`]
/// observations per history.
pub fn reconstruct_machine(model: &EmpiricalModel, merge_tol: f64) -> Result<Reconstruction> {
    reconstruct_machine_with(model, merge_tol, DEFAULT_MIN_COUNT)
}

/// [`reconstruct_machine`] with an explicit per-history minimum count.
pub fn reconstruct_machine_with(
    model: &EmpiricalModel,
    merge_tol: f64,
    min_count: u64,
) -> Result<Reconstruction> {
    for history in model.histories() {
        let total = model.total(history);
        if total < min_count {
            return Err(Error::InsufficientData(format!(
                "history {:?} observed {total} times, need {min_count}",
                history.render(model.alphabet())
            )));
        }
    }
    // The final window's history must itself be a candidate state, or the
    // machine would have a transition into a state with no outgoing row.
    if model.total(&model.tail) == 0 {
        return Err(Error::InsufficientData(format!(
            "history {:?} observed only at the end of the sequence",
            model.tail.render(model.alphabet())
        )));
    }

    let histories: Vec<&History> = model.histories().collect();
    let index: BTreeMap<&History, usize> =
        histories.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let n = histories.len();
    let a = model.alphabet().len();

    // Unifilar by construction: history plus emission determines the next
    // history.
    let mut tensor = vec![0.0; n * a * n];
    for (j, history) in histories.iter().enumerate() {
        for r in 0..a {
            let p = model.conditional(history, r);
            if p == 0.0 {
                continue;
            }
            let successor = history.shift(r);
            let k = *index.get(&successor).ok_or_else(|| {
                Error::InsufficientData(format!(
                    "successor history {:?} never observed with a next symbol",
                    successor.render(model.alphabet())
                ))
            })?;
            tensor[j * a * n + r * n + k] = p;
        }
    }
    let candidate = EpsilonMachine::new(model.alphabet().clone(), n, tensor)
        .map_err(|e| Error::InvalidMachine(format!("reconstructed tensor: {e}")))?;

    let (machine, block) = merge_equivalent_states_with_map(&candidate, merge_tol);
    let state_of_history = histories
        .iter()
        .enumerate()
        .map(|(i, &h)| (h.clone(), block[i]))
        .collect();
    Ok(Reconstruction { machine, state_of_history })
}

/// Full empirical pipeline: estimate conditionals, reconstruct, and return
/// the `(C_mu, C_q)` estimates of the reconstructed machine.
pub fn empirical_complexities(
    seq: &SymbolSequence,
    order: usize,
    merge_tol: f64,
) -> Result<(f64, f64)> {
    let model = estimate_conditionals(seq, order)?;
    let reconstruction = reconstruct_machine(&model, merge_tol)?;
    let c_mu = statistical_complexity(&reconstruction.machine, merge_tol)?;
    let c_q = quantum_complexity(&reconstruction.machine, merge_tol)?;
    Ok((c_mu, c_q))
}
