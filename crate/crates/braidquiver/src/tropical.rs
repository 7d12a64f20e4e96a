//! Exact tropical X-variable dynamics and triviality certificates.
//!
//! Tropicalization sends each X-variable to a Laurent monomial in the initial
//! variables, recorded here as an integer exponent vector over the initial
//! label set.  A mutation μ_k acts by
//!   𝖷_k[t+1] = 𝖷_k[t]^{-1},
//!   𝖷_i[t+1] = 𝖷_i[t] · 𝖷_k[t]^{[ϵ[t] ε_{ik}]_+}   (i ≠ k),
//! where ϵ[t] is the tropical sign of 𝖷_k[t] and [a]_+ = max(a, 0).  Every
//! monomial produced this way is sign-coherent (all exponents ≥ 0 or all
//! ≤ 0); the code asserts this rather than assuming it.
//!
//! A cluster transformation that returns every tropical monomial to its
//! initial basis vector and the exchange matrix to its initial value is
//! trivial: it acts as the identity on all torus coordinates.

use crate::seedcore::{
    normalize_transform, ClusterTransformation, Permutation, Seed, TransformationStep, VertexLabel,
};
use crate::{Error, Result};

/// Integer exponent vector over the initial label set.
pub type TropicalMonomial = Vec<i64>;

/// Tropical sign of a sign-coherent exponent vector: +1 when all entries are
/// ≥ 0 (including the zero vector, by convention), −1 when all are ≤ 0 with
/// at least one negative.
pub fn tropical_sign(m: &[i64]) -> Result<i8> {
    let has_pos = m.iter().any(|&v| v > 0);
    let has_neg = m.iter().any(|&v| v < 0);
    match (has_pos, has_neg) {
        (true, true) => Err(Error::SignIncoherent(m.to_vec())),
        (false, true) => Ok(-1),
        _ => Ok(1),
    }
}

/// Seed together with one tropical monomial per label, exponents indexed by
/// the initial label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalState {
    pub seed: Seed,
    pub monomials: Vec<TropicalMonomial>,
}

impl TropicalState {
    /// Initial state: monomials are the standard basis vectors.
    pub fn initial(seed: &Seed) -> Self {
        let n = seed.len();
        let monomials = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e
            })
            .collect();
        TropicalState {
            seed: seed.clone(),
            monomials,
        }
    }

    /// True when every monomial is the corresponding basis vector.
    pub fn is_initial(&self) -> bool {
        self.monomials.iter().enumerate().all(|(i, m)| {
            m.iter()
                .enumerate()
                .all(|(j, &v)| v == if i == j { 1 } else { 0 })
        })
    }
}

/// One tropical mutation step at vertex `k`; the seed's ε mutates alongside.
pub fn tropical_step(state: &TropicalState, k: &VertexLabel) -> Result<TropicalState> {
    let ki = state.seed.index_of(k)?;
    let sign = tropical_sign(&state.monomials[ki])? as i64;
    let gamma = state.monomials[ki].clone();
    let mut monomials = state.monomials.clone();
    for (i, m) in monomials.iter_mut().enumerate() {
        if i == ki {
            for v in m.iter_mut() {
                *v = -*v;
            }
        } else {
            let c = (sign * state.seed.eps(i, ki)).max(0);
            if c != 0 {
                for (v, g) in m.iter_mut().zip(&gamma) {
                    *v += c * g;
                }
            }
        }
    }
    for m in &monomials {
        tropical_sign(m)?;
    }
    Ok(TropicalState {
        seed: state.seed.mutate_epsilon(k)?,
        monomials,
    })
}

/// Relabeling action on a tropical state: monomial of α(i) after = monomial
/// of i before; exponent indexing (over the initial labels) is unchanged.
pub fn tropical_permute(state: &TropicalState, p: &Permutation) -> Result<TropicalState> {
    let seed = state.seed.apply_automorphism(p)?;
    let mut monomials = state.monomials.clone();
    for (i, l) in state.seed.labels().iter().enumerate() {
        let ai = state.seed.index_of(&p.apply(l))?;
        monomials[ai] = state.monomials[i].clone();
    }
    Ok(TropicalState { seed, monomials })
}

/// Per-mutation record of the trace: mutated vertex, the exponent vector
/// γ[t] of 𝖷_{k[t]}[t], and its tropical sign ϵ[t].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    pub k: VertexLabel,
    pub gamma: TropicalMonomial,
    pub sign: i8,
}

/// γ/sign sequence of a normalized transformation plus its trailing
/// permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTrace {
    pub entries: Vec<GammaEntry>,
    pub trailing_perm: Permutation,
}

/// Normalize `t`, replay the tropical dynamics along its mutation list, and
/// record per-step states and the γ/sign sequence.
///
/// The returned states are indexed by time: states[0] is the initial state
/// (time 1 in table notation) and states[t] the state after the t-th
/// mutation; the trailing permutation is reported separately and not applied
/// to the last state.
pub fn trace_transformation(
    seed: &Seed,
    t: &ClusterTransformation,
) -> Result<(Vec<TropicalState>, GammaTrace)> {
    let norm = normalize_transform(t);
    let mut states = vec![TropicalState::initial(seed)];
    let mut entries = Vec::new();
    for step in &norm.steps {
        match step {
            TransformationStep::Mutation(k) => {
                let cur = states.last().unwrap();
                let ki = cur.seed.index_of(k)?;
                let gamma = cur.monomials[ki].clone();
                let sign = tropical_sign(&gamma)?;
                entries.push(GammaEntry {
                    k: k.clone(),
                    gamma,
                    sign,
                });
                let next = tropical_step(cur, k)?;
                states.push(next);
            }
            TransformationStep::Automorphism(_) => {}
        }
    }
    Ok((
        states,
        GammaTrace {
            entries,
            trailing_perm: norm.trailing_permutation(),
        },
    ))
}

/// Exact triviality test: after the full transformation (trailing permutation
/// included) the exchange matrix must equal the initial one and every
/// tropical monomial its initial basis vector.
pub fn is_trivial(seed: &Seed, t: &ClusterTransformation) -> Result<bool> {
    let norm = normalize_transform(t);
    let mut state = TropicalState::initial(seed);
    for step in &norm.steps {
        state = match step {
            TransformationStep::Mutation(k) => tropical_step(&state, k)?,
            TransformationStep::Automorphism(p) => tropical_permute(&state, p)?,
        };
    }
    if state.seed.labels() != seed.labels() {
        return Err(Error::LabelSetChanged);
    }
    Ok(state.seed == *seed && state.is_initial())
}
