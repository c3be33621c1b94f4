//! Subshifts described generatively, and their languages.
//!
//! A [`SubshiftSpec`] names a subshift; a [`Subshift`] is the validated,
//! ready-to-query form that caches word sets by length. All word sets are in
//! canonical (alphabet-lexicographic) order.

mod growth;
mod sft;
mod sturmian;
mod substitution;
mod wordset;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

pub use growth::{growth_report, morse_hedlund_classify, GrowthReport, MorseHedlund, PansiotClass};
pub use sft::CoreGraph;
pub use sturmian::QuadraticIrrational;
pub use substitution::Substitution;
pub use wordset::WordSet;

/// Default cap on the number of words materialized for one length.
pub const DEFAULT_WORD_CAP: usize = 1 << 22;

/// Initial sampling window factor for mechanical words: length-n factors
/// are first collected from the first `64 n` symbols, and the window doubles
/// until all `n + 1` factors have appeared.
pub const STURMIAN_WINDOW_FACTOR: usize = 64;

/// Longest mechanical-word prefix sampled before giving up.
pub const STURMIAN_MAX_WINDOW: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    Full,
    Sft { forbidden: Vec<Word> },
    Substitution { rules: Vec<Word>, seed: Symbol },
    Sturmian { alpha: QuadraticIrrational },
    Periodic { word: Word },
}

/// Generative description of a subshift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubshiftSpec {
    pub alphabet: Alphabet,
    pub kind: ShiftKind,
}

impl SubshiftSpec {
    pub fn full(alphabet: Alphabet) -> Self {
        SubshiftSpec { alphabet, kind: ShiftKind::Full }
    }

    pub fn sft(alphabet: Alphabet, forbidden: &[&str]) -> Result<Self> {
        let forbidden = forbidden
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        let spec = SubshiftSpec { alphabet, kind: ShiftKind::Sft { forbidden } };
        spec.validate()?;
        Ok(spec)
    }

    /// `rules` maps each alphabet symbol to its image.
    pub fn substitution(alphabet: Alphabet, rules: &[(char, &str)], seed: char) -> Result<Self> {
        let mut table: Vec<Option<Word>> = vec![None; alphabet.size()];
        for &(c, img) in rules {
            let idx = usize::from(alphabet.index_of(c)?);
            if table[idx].is_some() {
                return Err(Error::InvalidSpec(format!("symbol {c:?} has two rules")));
            }
            table[idx] = Some(alphabet.parse_word(img)?);
        }
        let rules = table
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or_else(|| {
                    Error::InvalidSpec(format!("no rule for symbol {:?}", alphabet.char_of(i as Symbol)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let seed = alphabet.index_of(seed)?;
        let spec = SubshiftSpec { alphabet, kind: ShiftKind::Substitution { rules, seed } };
        spec.validate()?;
        Ok(spec)
    }

    /// Mechanical word of slope `(p + sqrt(q)) / r` and intercept 0, over `{0, 1}`.
    pub fn sturmian(p: i64, q: i64, r: i64) -> Result<Self> {
        Ok(SubshiftSpec {
            alphabet: Alphabet::binary(),
            kind: ShiftKind::Sturmian { alpha: QuadraticIrrational::slope(p, q, r)? },
        })
    }

    /// The orbit of `w^inf`, over `alphabet`.
    pub fn periodic(alphabet: Alphabet, word: &str) -> Result<Self> {
        let word = alphabet.parse_word(word)?;
        let spec = SubshiftSpec { alphabet, kind: ShiftKind::Periodic { word } };
        spec.validate()?;
        Ok(spec)
    }

    /// Fibonacci substitution `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        SubshiftSpec::substitution(Alphabet::binary(), &[('0', "01"), ('1', "0")], '0')
            .expect("fibonacci substitution is primitive")
    }

    /// Golden-mean shift: binary sequences without `11`.
    pub fn golden_mean() -> Self {
        SubshiftSpec::sft(Alphabet::binary(), &["11"]).expect("valid")
    }

    pub fn full_binary() -> Self {
        SubshiftSpec::full(Alphabet::binary())
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.alphabet.size();
        let in_alphabet = |w: &Word| w.iter().all(|&s| usize::from(s) < k);
        match &self.kind {
            ShiftKind::Full => Ok(()),
            ShiftKind::Sft { forbidden } => {
                if forbidden.iter().any(|w| w.is_empty()) {
                    return Err(Error::InvalidSpec("forbidden words must be nonempty".into()));
                }
                if !forbidden.iter().all(in_alphabet) {
                    return Err(Error::InvalidSpec("forbidden word outside alphabet".into()));
                }
                Ok(())
            }
            ShiftKind::Substitution { rules, seed } => {
                if rules.len() != k || !rules.iter().all(in_alphabet) || usize::from(*seed) >= k {
                    return Err(Error::InvalidSpec("substitution does not match its alphabet".into()));
                }
                if rules.iter().any(|r| r.is_empty()) {
                    return Err(Error::InvalidSpec("substitution images must be nonempty".into()));
                }
                if !self.substitution_rule().map(|s| s.is_primitive()).unwrap_or(false) {
                    return Err(Error::NonPrimitiveSubstitution);
                }
                Ok(())
            }
            ShiftKind::Sturmian { alpha } => {
                QuadraticIrrational::slope(alpha.p, alpha.q, alpha.r)?;
                if k != 2 {
                    return Err(Error::InvalidSpec("mechanical words use a binary alphabet".into()));
                }
                Ok(())
            }
            ShiftKind::Periodic { word } => {
                if word.is_empty() || !in_alphabet(word) {
                    return Err(Error::InvalidSpec("periodic word must be nonempty".into()));
                }
                Ok(())
            }
        }
    }

    fn substitution_rule(&self) -> Option<Substitution> {
        match &self.kind {
            ShiftKind::Substitution { rules, .. } => Some(Substitution {
                rules: rules.iter().map(|r| r.0.clone()).collect(),
            }),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ShiftKind::Full => "full",
            ShiftKind::Sft { .. } => "sft",
            ShiftKind::Substitution { .. } => "substitution",
            ShiftKind::Sturmian { .. } => "sturmian",
            ShiftKind::Periodic { .. } => "periodic",
        }
    }

    /// Longest forbidden word (SFT), zero otherwise.
    pub fn forbidden_max(&self) -> usize {
        match &self.kind {
            ShiftKind::Sft { forbidden } => forbidden.iter().map(Word::len).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// Full shifts and SFTs have a finite check for image containment.
    pub fn has_exact_endomorphy_bound(&self) -> bool {
        matches!(self.kind, ShiftKind::Full | ShiftKind::Sft { .. })
    }

    /// Default depth for endomorphy checks of range-`range` codes.
    pub fn default_depth(&self, range: usize) -> usize {
        if self.has_exact_endomorphy_bound() {
            (4 * range + 4).max(self.forbidden_max() + 2 * range)
        } else {
            6 * range + 12
        }
    }
}

impl fmt::Display for SubshiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.alphabet;
        match &self.kind {
            ShiftKind::Full => write!(f, "full shift over {a}"),
            ShiftKind::Sft { forbidden } => {
                let ws: Vec<String> = forbidden.iter().map(|w| a.render(w)).collect();
                write!(f, "SFT over {a} forbidding [{}]", ws.join(", "))
            }
            ShiftKind::Substitution { rules, seed } => {
                let rs: Vec<String> = rules
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("{}->{}", a.char_of(i as Symbol), a.render(r)))
                    .collect();
                write!(f, "substitution {} seed {}", rs.join(", "), a.char_of(*seed))
            }
            ShiftKind::Sturmian { alpha } => write!(
                f,
                "mechanical word, alpha = ({} + sqrt({}))/{} ~ {:.6}",
                alpha.p,
                alpha.q,
                alpha.r,
                alpha.approx()
            ),
            ShiftKind::Periodic { word } => write!(f, "periodic orbit of ({})^inf", a.render(word)),
        }
    }
}

/// Whether a subshift is known to be topologically transitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transitivity {
    Transitive(String),
    Unknown,
}

impl Transitivity {
    pub fn is_transitive(&self) -> bool {
        matches!(self, Transitivity::Transitive(_))
    }
}

enum Engine {
    Full,
    Sft(CoreGraph),
    Substitution(Substitution),
    Sturmian(QuadraticIrrational),
    Periodic(Vec<Symbol>),
}

/// A validated subshift with a per-length word cache.
pub struct Subshift {
    spec: SubshiftSpec,
    engine: Engine,
    word_cap: usize,
    cache: Mutex<HashMap<usize, Arc<WordSet>>>,
}

impl fmt::Debug for Subshift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subshift").field("spec", &self.spec).field("word_cap", &self.word_cap).finish()
    }
}

impl Subshift {
    pub fn new(spec: SubshiftSpec) -> Result<Self> {
        spec.validate()?;
        let engine = match &spec.kind {
            ShiftKind::Full => Engine::Full,
            ShiftKind::Sft { forbidden } => {
                let f: Vec<Vec<Symbol>> = forbidden.iter().map(|w| w.0.clone()).collect();
                Engine::Sft(CoreGraph::build(spec.alphabet.size(), &f)?)
            }
            ShiftKind::Substitution { .. } => Engine::Substitution(spec.substitution_rule().expect("substitution")),
            ShiftKind::Sturmian { alpha } => Engine::Sturmian(*alpha),
            ShiftKind::Periodic { word } => Engine::Periodic(word.0.clone()),
        };
        Ok(Subshift {
            spec,
            engine,
            word_cap: DEFAULT_WORD_CAP,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.spec.alphabet
    }

    /// The SFT core graph, when this is a shift of finite type.
    pub fn core_graph(&self) -> Option<&CoreGraph> {
        match &self.engine {
            Engine::Sft(g) => Some(g),
            _ => None,
        }
    }

    fn limit(&self, n: usize) -> Error {
        Error::ResourceLimit(format!(
            "more than {} words of length {n} in {}",
            self.word_cap, self.spec
        ))
    }

    /// The admissible words of length `n` (cached).
    pub fn words(&self, n: usize) -> Result<Arc<WordSet>> {
        if n == 0 {
            return Err(Error::InvalidSpec("word length must be positive".into()));
        }
        if let Some(ws) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(Arc::clone(ws));
        }
        let ws = Arc::new(self.compute_words(n)?);
        self.cache.lock().expect("cache lock").insert(n, Arc::clone(&ws));
        Ok(ws)
    }

    fn compute_words(&self, n: usize) -> Result<WordSet> {
        let cap = self.word_cap;
        match &self.engine {
            Engine::Full => {
                let k = self.spec.alphabet.size();
                let total = (k as u128).checked_pow(n as u32).filter(|&t| t <= cap as u128);
                let Some(total) = total else { return Err(self.limit(n)) };
                let mut data = Vec::with_capacity(total as usize * n);
                let mut w = vec![0 as Symbol; n];
                for _ in 0..total {
                    data.extend_from_slice(&w);
                    // Odometer increment, last position fastest.
                    for pos in (0..n).rev() {
                        if usize::from(w[pos]) + 1 < k {
                            w[pos] += 1;
                            break;
                        }
                        w[pos] = 0;
                    }
                }
                Ok(WordSet::from_sorted_flat(n, data))
            }
            Engine::Sft(g) => g.words(n, cap).ok_or_else(|| self.limit(n)),
            Engine::Substitution(s) => s.factors(n, cap).ok_or_else(|| self.limit(n)),
            Engine::Sturmian(alpha) => {
                // Slopes close to a rational have long periodic stretches;
                // a fixed window can miss factors, but the count n + 1 is known.
                let mut len = STURMIAN_WINDOW_FACTOR * n;
                loop {
                    let x = alpha.mechanical_prefix(len);
                    let distinct: std::collections::BTreeSet<&[Symbol]> = x.windows(n).collect();
                    let ws = WordSet::from_words(n, distinct);
                    if ws.count() == n + 1 {
                        return Ok(ws);
                    }
                    if len >= STURMIAN_MAX_WINDOW {
                        return Err(Error::ResourceLimit(format!(
                            "only {} of {} factors of length {n} in the first {len} symbols of {}",
                            ws.count(),
                            n + 1,
                            self.spec
                        )));
                    }
                    len *= 2;
                }
            }
            Engine::Periodic(w) => {
                let p = w.len();
                let reps = (n + p).div_ceil(p);
                let long: Vec<Symbol> = w.iter().copied().cycle().take(reps * p).collect();
                Ok(WordSet::from_words(n, (0..p).map(|i| &long[i..i + n])))
            }
        }
    }

    /// `P_X(n)`. Counts without materializing where a closed form or a
    /// transfer count is available (full shifts, SFTs).
    pub fn complexity(&self, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidSpec("word length must be positive".into()));
        }
        let overflow = || Error::ResourceLimit(format!("P({n}) overflows u64"));
        match &self.engine {
            Engine::Full => (self.spec.alphabet.size() as u64)
                .checked_pow(n as u32)
                .ok_or_else(overflow),
            Engine::Sft(g) if n >= g.vertex_len() => g
                .count_paths(n)
                .and_then(|c| u64::try_from(c).ok())
                .ok_or_else(overflow),
            _ => Ok(self.words(n)?.count() as u64),
        }
    }

    pub fn complexity_table(&self, n_max: usize) -> Result<Vec<u64>> {
        (1..=n_max).map(|n| self.complexity(n)).collect()
    }

    pub fn transitivity(&self) -> Transitivity {
        match &self.engine {
            Engine::Full => Transitivity::Transitive("full shift has a dense orbit".into()),
            Engine::Periodic(_) => Transitivity::Transitive("single periodic orbit".into()),
            Engine::Substitution(_) => Transitivity::Transitive("primitive substitution, hence minimal".into()),
            Engine::Sturmian(_) => Transitivity::Transitive("irrational rotation coding, hence minimal".into()),
            Engine::Sft(g) => {
                if g.is_strongly_connected() {
                    Transitivity::Transitive(format!(
                        "transition graph on {} bi-extendable words of length {} is strongly connected",
                        g.vertices.count(),
                        g.vertex_len()
                    ))
                } else {
                    Transitivity::Unknown
                }
            }
        }
    }

    /// Is `w^inf` a point of this shift? `None` when no exact finite check exists.
    pub fn contains_periodic_point(&self, w: &[Symbol]) -> Option<bool> {
        let p = w.len();
        if p == 0 {
            return Some(false);
        }
        let check_len = match &self.engine {
            Engine::Full => return Some(true),
            Engine::Sft(g) => g.vertex_len(),
            // Two points of periods p and q agree everywhere once they
            // agree on a window of length p + q.
            Engine::Periodic(u) => p + u.len(),
            _ => return None,
        };
        let long: Vec<Symbol> = w.iter().copied().cycle().take(p + check_len).collect();
        let words = self.words(check_len).ok()?;
        Some((0..p).all(|i| words.contains(&long[i..i + check_len])))
    }
}

/// The length-`n` language of `spec`.
pub fn enumerate_words(spec: &SubshiftSpec, n: usize) -> Result<WordSet> {
    let shift = Subshift::new(spec.clone())?;
    Ok((*shift.words(n)?).clone())
}

pub fn block_complexity(spec: &SubshiftSpec, n: usize) -> Result<u64> {
    Subshift::new(spec.clone())?.complexity(n)
}

pub fn complexity_table(spec: &SubshiftSpec, n_max: usize) -> Result<Vec<u64>> {
    Subshift::new(spec.clone())?.complexity_table(n_max)
}

pub fn transitivity_certificate(spec: &SubshiftSpec) -> Transitivity {
    match Subshift::new(spec.clone()) {
        Ok(s) => s.transitivity(),
        Err(_) => Transitivity::Unknown,
    }
}
