//! Sorting words relative to a Coxeter element c, sortable and antisortable
//! elements, the projections onto them, and the singleton elements whose
//! projection fiber is trivial.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, EnumeratedGroup, GroupElement};
use crate::{Error, Result};

/// A Coxeter element, given as a word containing each generator exactly once.
#[derive(Clone, Debug)]
pub struct CoxeterChoice {
    pub word: Vec<usize>,
    pub element: GroupElement,
}

impl CoxeterChoice {
    pub fn new(sys: &CoxeterSystem, word: Vec<usize>) -> Result<CoxeterChoice> {
        let n = sys.rank();
        if word.len() != n {
            return Err(Error::NotCoxeterElement(format!(
                "word has {} letters, rank is {n}",
                word.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &word {
            if s >= n || seen[s] {
                return Err(Error::NotCoxeterElement(
                    "each generator must appear exactly once".into(),
                ));
            }
            seen[s] = true;
        }
        let element = sys.element_from_word(&word);
        Ok(CoxeterChoice { word, element })
    }

    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<CoxeterChoice> {
        let word: Result<Vec<usize>> = text
            .split(',')
            .map(|t| sys.gen_index(t.trim()))
            .collect();
        CoxeterChoice::new(sys, word?)
    }

    /// The reversed word, a reduced word for c^{-1}.
    pub fn inverse(&self, sys: &CoxeterSystem) -> CoxeterChoice {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        CoxeterChoice::new(sys, word).expect("reversal of a Coxeter word")
    }
}

/// Enumerate the distinct Coxeter elements of a system, each represented by
/// the lexicographically smallest word that produces it.
pub fn coxeter_elements(sys: &CoxeterSystem) -> Vec<CoxeterChoice> {
    let n = sys.rank();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<GroupElement, Vec<usize>> = HashMap::new();
    // lexicographic order over all n! words; first hit per element wins
    loop {
        let el = sys.element_from_word(&perm);
        seen.entry(el).or_insert_with(|| perm.clone());
        // next permutation in lexicographic order
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    let mut out: Vec<CoxeterChoice> = seen
        .into_iter()
        .map(|(element, word)| CoxeterChoice { word, element })
        .collect();
    out.sort_by(|a, b| a.word.cmp(&b.word));
    out
}

/// The block decomposition of a sorting word: the letters taken from each
/// successive pass through c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFactorization {
    /// Blocks K_1, ..., K_p as generator lists in c-order.
    pub blocks: Vec<Vec<usize>>,
}

impl CFactorization {
    pub fn word(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn length(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Nested blocks K_1 >= K_2 >= ... as sets.
    pub fn is_nested(&self) -> bool {
        self.blocks.windows(2).all(|w| {
            let prev: HashSet<usize> = w[0].iter().copied().collect();
            w[1].iter().all(|s| prev.contains(s))
        })
    }

    /// Render with `|` between blocks, e.g. `s1s2s3|s1s2|s1`.
    pub fn display(&self, sys: &CoxeterSystem) -> String {
        if self.blocks.is_empty() {
            return "e".to_string();
        }
        self.blocks
            .iter()
            .map(|b| sys.word_string(b))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// The sorting word of w relative to c: scan c repeated forever and greedily
/// take each letter that is a left descent of what remains.
pub fn c_sorting_word(sys: &CoxeterSystem, w: &GroupElement, c: &CoxeterChoice) -> CFactorization {
    let mut remainder = w.clone();
    let mut blocks = Vec::new();
    while !remainder.is_identity() {
        let mut block = Vec::new();
        for &s in &c.word {
            if sys.is_left_descent(&remainder, s) {
                block.push(s);
                remainder = sys.mul_gen_left(s, &remainder);
            }
        }
        assert!(!block.is_empty(), "no descent found in a full pass");
        blocks.push(block);
    }
    CFactorization { blocks }
}

pub fn is_c_sortable(sys: &CoxeterSystem, w: &GroupElement, c: &CoxeterChoice) -> bool {
    c_sorting_word(sys, w, c).is_nested()
}

/// w is c-antisortable when w w0 is sortable for the reversed Coxeter word.
pub fn is_c_antisortable(
    sys: &CoxeterSystem,
    w: &GroupElement,
    c: &CoxeterChoice,
    w0: &GroupElement,
) -> bool {
    let ww0 = sys.compose(w, w0);
    is_c_sortable(sys, &ww0, &c.inverse(sys))
}

/// All sortable-element data for one (system, c) pair, built by exhaustive
/// enumeration.
pub struct CambrianData {
    pub sys: Arc<CoxeterSystem>,
    pub group: Arc<EnumeratedGroup>,
    pub c: CoxeterChoice,
    pub w0: GroupElement,
    /// Per group index.
    pub sortable: Vec<bool>,
    pub antisortable: Vec<bool>,
    /// Group indices of the sortable elements, graded by length.
    pub sortables: Vec<usize>,
    /// Group index of the projection down/up, per group index.
    pub pi_down: Vec<usize>,
    pub pi_up: Vec<usize>,
    /// Fiber of each sortable element (group indices, including itself).
    pub fibers: HashMap<usize, Vec<usize>>,
    /// Singleton elements (via the non-descent test), graded by length.
    pub singletons: Vec<usize>,
}

impl CambrianData {
    pub fn new(
        sys: Arc<CoxeterSystem>,
        group: Arc<EnumeratedGroup>,
        c: CoxeterChoice,
    ) -> CambrianData {
        let w0 = sys.longest_element();
        let order = group.order();
        let sortable: Vec<bool> = group
            .elements
            .iter()
            .map(|w| is_c_sortable(&sys, w, &c))
            .collect();
        let c_inv = c.inverse(&sys);
        let antisortable: Vec<bool> = group
            .elements
            .iter()
            .map(|w| is_c_sortable(&sys, &sys.compose(w, &w0), &c_inv))
            .collect();
        let sortables: Vec<usize> = (0..order).filter(|&i| sortable[i]).collect();
        let antisortables: Vec<usize> = (0..order).filter(|&i| antisortable[i]).collect();

        let masks: Vec<u128> = group
            .elements
            .iter()
            .map(|w| sys.inversion_mask(w))
            .collect();
        let below = |a: usize, b: usize| masks[a] & masks[b] == masks[a];

        // projection down: the unique maximal sortable below
        let pi_down: Vec<usize> = (0..order)
            .map(|i| {
                let cands: Vec<usize> =
                    sortables.iter().copied().filter(|&u| below(u, i)).collect();
                let &max = cands
                    .iter()
                    .find(|&&u| cands.iter().all(|&v| below(v, u)))
                    .expect("sortables below w have no maximum");
                max
            })
            .collect();
        // projection up: the unique minimal antisortable above
        let pi_up: Vec<usize> = (0..order)
            .map(|i| {
                let cands: Vec<usize> = antisortables
                    .iter()
                    .copied()
                    .filter(|&u| below(i, u))
                    .collect();
                let &min = cands
                    .iter()
                    .find(|&&u| cands.iter().all(|&v| below(u, v)))
                    .expect("antisortables above w have no minimum");
                min
            })
            .collect();

        let mut fibers: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..order {
            fibers.entry(pi_down[i]).or_default().push(i);
        }

        let singletons: Vec<usize> = sortables
            .iter()
            .copied()
            .filter(|&i| {
                let w = &group.elements[i];
                (0..sys.rank()).all(|s| {
                    sys.is_right_descent(w, s) || {
                        let ws = sys.mul_gen_right(w, s);
                        is_c_sortable(&sys, &ws, &c)
                    }
                })
            })
            .collect();

        CambrianData {
            sys,
            group,
            c,
            w0,
            sortable,
            antisortable,
            sortables,
            pi_down,
            pi_up,
            fibers,
            singletons,
        }
    }

    pub fn pi_down_of(&self, w: &GroupElement) -> &GroupElement {
        &self.group.elements[self.pi_down[self.group.position(w)]]
    }

    pub fn pi_up_of(&self, w: &GroupElement) -> &GroupElement {
        &self.group.elements[self.pi_up[self.group.position(w)]]
    }

    pub fn fiber_of(&self, w: &GroupElement) -> Result<&[usize]> {
        let i = self.group.position(w);
        self.fibers
            .get(&i)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Parse("element is not sortable".into()))
    }

    pub fn is_singleton_index(&self, i: usize) -> bool {
        self.singletons.contains(&i)
    }

    /// Singletons by the sortable-and-antisortable characterization.
    pub fn singletons_via_antisortable(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&i| self.sortable[i] && self.antisortable[i])
            .collect()
    }

    pub fn sorting_word(&self, w: &GroupElement) -> CFactorization {
        c_sorting_word(&self.sys, w, &self.c)
    }
}

/// All words reachable from `word` by swapping adjacent commuting letters.
pub fn commutation_class(
    sys: &CoxeterSystem,
    word: &[usize],
    bound: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            if a == b || sys.matrix.get(a, b) != 2 {
                continue;
            }
            let mut next = cur.clone();
            next.swap(i, i + 1);
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(Error::CommutationClassTooLarge(bound));
                }
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

const COMMUTATION_BOUND: usize = 1_000_000;

/// Singletons as the prefixes, up to commutations, of the sorting word of
/// the longest element.
pub fn singletons_via_prefixes(
    sys: &CoxeterSystem,
    group: &EnumeratedGroup,
    c: &CoxeterChoice,
) -> Result<Vec<usize>> {
    let w0 = sys.longest_element();
    let sorting = c_sorting_word(sys, &w0, c).word();
    let class = commutation_class(sys, &sorting, COMMUTATION_BOUND)?;
    let mut set: HashSet<usize> = HashSet::new();
    for word in &class {
        for k in 0..=word.len() {
            let el = sys.element_from_word(&word[..k]);
            set.insert(group.position(&el));
        }
    }
    let mut out: Vec<usize> = set.into_iter().collect();
    out.sort_by_key(|&i| {
        (
            group.elements[i].length(),
            sys.canonical_word(&group.elements[i]),
        )
    });
    Ok(out)
}

/// Result of checking that a set of elements is closed under weak-order meet
/// and join and that the two operations distribute over each other.
#[derive(Debug, Default)]
pub struct LatticeReport {
    pub closure_violations: Vec<String>,
    pub distributivity_violations: Vec<String>,
}

impl LatticeReport {
    pub fn ok(&self) -> bool {
        self.closure_violations.is_empty() && self.distributivity_violations.is_empty()
    }
}

/// Weak-order meet and join computed inside the full group by brute force.
fn meet_join_tables(
    sys: &CoxeterSystem,
    group: &EnumeratedGroup,
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let order = group.order();
    let masks: Vec<u128> = group
        .elements
        .iter()
        .map(|w| sys.inversion_mask(w))
        .collect();
    let below = |a: usize, b: usize| masks[a] & masks[b] == masks[a];
    let mut meet = vec![vec![0usize; order]; order];
    let mut join = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            let lower: Vec<usize> = (0..order)
                .filter(|&x| below(x, a) && below(x, b))
                .collect();
            meet[a][b] = lower
                .iter()
                .copied()
                .find(|&x| lower.iter().all(|&y| below(y, x)))
                .expect("weak order is a lattice");
            let upper: Vec<usize> = (0..order)
                .filter(|&x| below(a, x) && below(b, x))
                .collect();
            join[a][b] = upper
                .iter()
                .copied()
                .find(|&x| upper.iter().all(|&y| below(x, y)))
                .expect("weak order is a lattice");
        }
    }
    (meet, join)
}

/// Check that `subset` (group indices) is a distributive sublattice of the
/// weak order.
pub fn sublattice_check(
    sys: &CoxeterSystem,
    group: &EnumeratedGroup,
    subset: &[usize],
) -> LatticeReport {
    let (meet, join) = meet_join_tables(sys, group);
    let member: HashSet<usize> = subset.iter().copied().collect();
    let mut report = LatticeReport::default();
    let name = |i: usize| sys.element_string(&group.elements[i]);
    for &a in subset {
        for &b in subset {
            for (table, label) in [(&meet, "meet"), (&join, "join")] {
                let r = table[a][b];
                if !member.contains(&r) {
                    report.closure_violations.push(format!(
                        "{label}({}, {}) = {} is outside the set",
                        name(a),
                        name(b),
                        name(r)
                    ));
                }
            }
        }
    }
    if !report.closure_violations.is_empty() {
        return report;
    }
    for &a in subset {
        for &b in subset {
            for &c in subset {
                let lhs = meet[a][join[b][c]];
                let rhs = join[meet[a][b]][meet[a][c]];
                if lhs != rhs {
                    report.distributivity_violations.push(format!(
                        "{} meet ({} join {}): {} vs {}",
                        name(a),
                        name(b),
                        name(c),
                        name(lhs),
                        name(rhs)
                    ));
                }
                let lhs = join[a][meet[b][c]];
                let rhs = meet[join[a][b]][join[a][c]];
                if lhs != rhs {
                    report.distributivity_violations.push(format!(
                        "{} join ({} meet {}): {} vs {}",
                        name(a),
                        name(b),
                        name(c),
                        name(lhs),
                        name(rhs)
                    ));
                }
            }
        }
    }
    report
}
