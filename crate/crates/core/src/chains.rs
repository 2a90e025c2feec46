//! Order types of propositional atoms between ⊥ and ⊤, evaluation over them,
//! the two chain normal forms, and chain-based propositional validity.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("formula is not propositional")]
    NotPropositional,
    #[error("atom '{0}' does not occur in the chain")]
    AtomNotInChain(String),
    #[error("a level bound must be at least 2, got {0}")]
    LevelsTooSmall(usize),
}

/// Blocks `B0 < B1 < … < Bk+1`. `B0` holds ⊥ and `Bk+1` holds ⊤; either may
/// also hold atoms. Inner blocks are nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    blocks: Vec<Vec<String>>,
    level: BTreeMap<String, usize>,
}

/// A block of a chain, by index (0 is the ⊥-block).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainValue(pub usize);

/// How links between neighbouring chain entries are written as formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkStyle {
    /// `¬Δ(b⊃a)` for a < b and `Δ(a↔b)` for a ≡ b: value 1 on the chain, 0 elsewhere.
    Crisp,
    /// `b<a` and `a↔b`, without Δ.
    Plain,
}

impl Chain {
    fn from_levels(atoms: &[String], levels: &[usize], inner: usize) -> Chain {
        let mut blocks = vec![Vec::new(); inner + 2];
        let mut level = BTreeMap::new();
        for (a, &l) in atoms.iter().zip(levels) {
            let l = if l == atoms.len() + 1 { inner + 1 } else { l };
            blocks[l].push(a.clone());
            level.insert(a.clone(), l);
        }
        Chain { blocks, level }
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn top(&self) -> ChainValue {
        ChainValue(self.blocks.len() - 1)
    }

    pub fn block_of(&self, atom: &str) -> Option<ChainValue> {
        self.level.get(atom).map(|l| ChainValue(*l))
    }

    /// An assignment realizing the chain: block `i` gets value `i / (len-1)`.
    pub fn realization(&self) -> BTreeMap<String, crate::Rat> {
        let d = (self.blocks.len() - 1) as i64;
        self.level.iter().map(|(a, l)| (a.clone(), crate::Rat::new(*l as i64, d))).collect()
    }

    /// The formula naming a block: ⊥, ⊤, or the block's first atom.
    pub fn block_formula(&self, v: ChainValue) -> Formula {
        if v.0 == 0 {
            Formula::Bottom
        } else if v == self.top() {
            Formula::Top
        } else {
            Formula::prop(&self.blocks[v.0][0])
        }
    }

    /// Conjunction of the links `⊥ … < … ⊤`, skipping the trivial `⊥ < ⊤`.
    pub fn to_formula(&self, style: LinkStyle) -> Formula {
        let strict = |a: Formula, b: Formula| match style {
            LinkStyle::Crisp => Formula::not(Formula::delta(Formula::implies(b, a))),
            LinkStyle::Plain => Formula::less(b, a),
        };
        let equal = |a: Formula, b: Formula| match style {
            LinkStyle::Crisp => Formula::delta(Formula::iff(a, b)),
            LinkStyle::Plain => Formula::iff(a, b),
        };
        let last = self.blocks.len() - 1;
        let mut links = Vec::new();
        let mut prev: Option<Formula> = None;
        for (i, block) in self.blocks.iter().enumerate() {
            let mut members: Vec<Formula> = block.iter().map(|a| Formula::prop(a)).collect();
            if i == 0 {
                members.insert(0, Formula::Bottom);
            }
            if i == last {
                members.push(Formula::Top);
            }
            if let Some(p) = prev.take() {
                if !(p == Formula::Bottom && members[0] == Formula::Top) {
                    links.push(strict(p, members[0].clone()));
                }
            }
            for w in members.windows(2) {
                // atoms merged with an endpoint are written `X↔⊥` / `X↔⊤`
                let (a, b) = if w[0] == Formula::Bottom { (w[1].clone(), w[0].clone()) } else { (w[0].clone(), w[1].clone()) };
                links.push(equal(a, b));
            }
            prev = members.last().cloned();
        }
        Formula::conjunction(links)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.blocks.len() - 1;
        let parts: Vec<String> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut names: Vec<&str> = b.iter().map(String::as_str).collect();
                if i == 0 {
                    names.insert(0, "bot");
                }
                if i == last {
                    names.push("top");
                }
                names.join(" == ")
            })
            .collect();
        f.write_str(&parts.join(" < "))
    }
}

/// One chain per order type of `atoms` strictly between ⊥ < ⊤.
///
/// `restricted` drops chains putting an atom in the ⊤-block; `max_levels`
/// bounds the number of blocks, ⊥- and ⊤-blocks included.
pub fn enumerate_chains(atoms: &[String], restricted: bool, max_levels: Option<usize>) -> Result<Vec<Chain>, ChainError> {
    if let Some(m) = max_levels {
        if m < 2 {
            return Err(ChainError::LevelsTooSmall(m));
        }
    }
    let n = atoms.len();
    let top = n + 1;
    let max_inner = max_levels.map_or(n, |m| (m - 2).min(n));
    let mut out = Vec::new();
    let mut levels = vec![0usize; n];
    loop {
        let mut used = vec![false; n + 2];
        for &l in &levels {
            used[l] = true;
        }
        let inner = (1..=n).filter(|l| used[*l]).count();
        let contiguous = (1..=inner).all(|l| used[l]);
        if contiguous && inner <= max_inner && !(restricted && used[top]) {
            out.push(Chain::from_levels(atoms, &levels, inner));
        }
        // odometer over 0..=n+1 per atom
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if levels[k] < top {
                levels[k] += 1;
                break;
            }
            levels[k] = 0;
        }
    }
}

/// The block holding the value of `f` under any assignment realizing `c`.
pub fn psi_eval(f: &Formula, c: &Chain) -> Result<ChainValue, ChainError> {
    let top = c.top();
    Ok(match f {
        Formula::Bottom => ChainValue(0),
        Formula::Top => top,
        Formula::Atom(p, args) if args.is_empty() => c.block_of(p).ok_or_else(|| ChainError::AtomNotInChain(p.clone()))?,
        Formula::And(a, b) => psi_eval(a, c)?.min(psi_eval(b, c)?),
        Formula::Or(a, b) => psi_eval(a, c)?.max(psi_eval(b, c)?),
        Formula::Implies(a, b) => {
            let (x, y) = (psi_eval(a, c)?, psi_eval(b, c)?);
            if x <= y {
                top
            } else {
                y
            }
        }
        Formula::Delta(a) => {
            if psi_eval(a, c)? == top {
                top
            } else {
                ChainValue(0)
            }
        }
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => return Err(ChainError::NotPropositional),
    })
}

fn check_prop(f: &Formula) -> Result<Vec<String>, ChainError> {
    if !f.is_propositional() {
        return Err(ChainError::NotPropositional);
    }
    Ok(f.prop_atoms())
}

/// `⋁_C (C ∧ ψ_C(f))` over all chains of the atoms of `f`, links written crisply.
pub fn cnf_delta_1(f: &Formula) -> Result<Formula, ChainError> {
    let atoms = check_prop(f)?;
    let mut disjuncts = Vec::new();
    for c in enumerate_chains(&atoms, false, None)? {
        let v = psi_eval(f, &c)?;
        disjuncts.push(Formula::and(c.to_formula(LinkStyle::Crisp), c.block_formula(v)));
    }
    Ok(Formula::disjunction(disjuncts))
}

/// The restricted chains on which `f` takes the ⊤-block, written without Δ.
/// Disjuncts with ψ in the ⊥-block or an atom block are deleted.
pub fn cnf_delta_2(f: &Formula) -> Result<Formula, ChainError> {
    let atoms = check_prop(f)?;
    let mut disjuncts = Vec::new();
    for c in enumerate_chains(&atoms, true, None)? {
        if psi_eval(f, &c)? == c.top() {
            disjuncts.push(c.to_formula(LinkStyle::Plain));
        }
    }
    Ok(Formula::disjunction(disjuncts))
}

/// Propositional validity: ψ is the ⊤-block on every chain (with at most
/// `levels` blocks when given, deciding validity over the `levels`-element set).
pub fn decide_valid_prop(f: &Formula, levels: Option<usize>) -> Result<bool, ChainError> {
    Ok(first_refuting_chain(f, levels)?.is_none())
}

/// The first chain (in enumeration order) on which `f` is not the ⊤-block.
pub fn first_refuting_chain(f: &Formula, levels: Option<usize>) -> Result<Option<Chain>, ChainError> {
    let atoms = check_prop(f)?;
    if let Some(m) = levels {
        if m < 2 {
            return Err(ChainError::LevelsTooSmall(m));
        }
    }
    let n = atoms.len();
    let max_inner = levels.map_or(n, |m| (m - 2).min(n));
    // Split on the level of the first atom; each part runs its own odometer.
    let firsts: Vec<usize> = if n == 0 { vec![0] } else { (0..=n + 1).collect() };
    let hit = firsts.into_par_iter().map(|first| refuting_in_part(f, &atoms, first, max_inner)).find_first(|r| !matches!(r, Ok(None)));
    hit.unwrap_or(Ok(None))
}

/// Lazy scan of the level vectors whose first entry is `first`.
fn refuting_in_part(f: &Formula, atoms: &[String], first: usize, max_inner: usize) -> Result<Option<Chain>, ChainError> {
    let n = atoms.len();
    let top = n + 1;
    let mut levels = vec![0usize; n];
    if n > 0 {
        levels[0] = first;
    }
    let mut used = vec![false; n + 2];
    loop {
        used.iter_mut().for_each(|u| *u = false);
        for &l in &levels {
            used[l] = true;
        }
        let inner = (1..=n).filter(|l| used[*l]).count();
        if (1..=inner).all(|l| used[l]) && inner <= max_inner && psi_levels(f, atoms, &levels, inner)? != inner + 1 {
            return Ok(Some(Chain::from_levels(atoms, &levels, inner)));
        }
        let mut k = n;
        loop {
            if k <= 1 {
                return Ok(None);
            }
            k -= 1;
            if levels[k] < top {
                levels[k] += 1;
                break;
            }
            levels[k] = 0;
        }
    }
}

/// `psi_eval` on a raw level vector, without building the chain.
fn psi_levels(f: &Formula, atoms: &[String], levels: &[usize], inner: usize) -> Result<usize, ChainError> {
    let top = inner + 1;
    let r = |g: &Formula| psi_levels(g, atoms, levels, inner);
    Ok(match f {
        Formula::Bottom => 0,
        Formula::Top => top,
        Formula::Atom(p, args) if args.is_empty() => {
            let k = atoms.iter().position(|a| a == p).ok_or_else(|| ChainError::AtomNotInChain(p.clone()))?;
            if levels[k] == atoms.len() + 1 {
                top
            } else {
                levels[k]
            }
        }
        Formula::And(a, b) => r(a)?.min(r(b)?),
        Formula::Or(a, b) => r(a)?.max(r(b)?),
        Formula::Implies(a, b) => {
            let (x, y) = (r(a)?, r(b)?);
            if x <= y {
                top
            } else {
                y
            }
        }
        Formula::Delta(a) => {
            if r(a)? == top {
                top
            } else {
                0
            }
        }
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => return Err(ChainError::NotPropositional),
    })
}
