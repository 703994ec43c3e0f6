//! Collapse-driven search for Morse matchings.
//!
//! Every acyclic matching arises from removing faces top-down along a linear
//! extension of its Morse function: at each step either a free pair is
//! collapsed or a maximal face is declared critical. Both the randomized
//! heuristic and the exhaustive branch-and-bound walk this state space.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{FaceId, FaceIndex};
use crate::error::{Error, Result};
use crate::homology::betti_masked;

/// Node-expansion budget plus the randomized phase parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
    pub restarts: u32,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 1_000_000, restarts: 10, seed: 0 }
    }
}

impl SearchBudget {
    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_restarts(mut self, restarts: u32) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Result of a search that may be cut short by its budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The exhaustive search completed without finding a witness.
    Impossible,
    /// Budget exhausted before the search completed.
    Inconclusive,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U, F: FnOnce(T) -> U>(self, f: F) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Impossible => Outcome::Impossible,
            Outcome::Inconclusive => Outcome::Inconclusive,
        }
    }
}

pub(crate) fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("MORSECRAFT_THREADS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Pair(FaceId, FaceId),
    Critical(FaceId),
}

/// Mutable removal state over a face index.
#[derive(Clone)]
pub(crate) struct Arena<'a> {
    pub ix: &'a FaceIndex,
    pub removable: Vec<bool>,
    pub alive: Vec<bool>,
    pub up_alive: Vec<u32>,
    pub remaining: usize,
}

impl<'a> Arena<'a> {
    pub fn new(ix: &'a FaceIndex, removable: Vec<bool>) -> Self {
        let up_alive = (0..ix.len() as FaceId).map(|i| ix.up(i).len() as u32).collect();
        let remaining = removable.iter().filter(|&&r| r).count();
        Arena { ix, removable, alive: vec![true; ix.len()], up_alive, remaining }
    }

    fn remove(&mut self, id: FaceId) {
        debug_assert!(self.alive[id as usize] && self.removable[id as usize]);
        self.alive[id as usize] = false;
        self.remaining -= 1;
        for &d in self.ix.down(id) {
            self.up_alive[d as usize] -= 1;
        }
    }

    fn restore(&mut self, id: FaceId) {
        self.alive[id as usize] = true;
        self.remaining += 1;
        for &d in self.ix.down(id) {
            self.up_alive[d as usize] += 1;
        }
    }

    fn is_free(&self, id: FaceId) -> bool {
        let i = id as usize;
        self.alive[i] && self.removable[i] && self.up_alive[i] == 1
    }

    fn is_maximal(&self, id: FaceId) -> bool {
        let i = id as usize;
        self.alive[i] && self.removable[i] && self.up_alive[i] == 0
    }

    fn alive_coface(&self, id: FaceId) -> FaceId {
        *self.ix.up(id).iter().find(|&&c| self.alive[c as usize]).expect("free face has a coface")
    }

    pub fn apply(&mut self, step: Step) {
        match step {
            Step::Pair(free, coface) => {
                self.remove(coface);
                self.remove(free);
            }
            Step::Critical(f) => self.remove(f),
        }
    }

    pub fn undo(&mut self, step: Step) {
        match step {
            Step::Pair(free, coface) => {
                self.restore(free);
                self.restore(coface);
            }
            Step::Critical(f) => self.restore(f),
        }
    }

    fn alive_removable_mask(&self) -> Vec<bool> {
        self.alive.iter().zip(&self.removable).map(|(&a, &r)| a && r).collect()
    }

    fn state_key(&self) -> Vec<u64> {
        let mut key = vec![0u64; self.alive.len().div_ceil(64)];
        for (i, (&a, &r)) in self.alive.iter().zip(&self.removable).enumerate() {
            if a && r {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }

    fn top_dim(&self) -> usize {
        self.ix.top_dim().unwrap_or(0)
    }
}

/// Insertion-ordered set of face ids with O(1) removal.
struct IndexedSet {
    items: Vec<FaceId>,
    pos: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl IndexedSet {
    fn new(n: usize) -> Self {
        IndexedSet { items: Vec::new(), pos: vec![ABSENT; n] }
    }

    fn insert(&mut self, id: FaceId) {
        if self.pos[id as usize] == ABSENT {
            self.pos[id as usize] = self.items.len() as u32;
            self.items.push(id);
        }
    }

    fn remove(&mut self, id: FaceId) {
        let p = self.pos[id as usize];
        if p == ABSENT {
            return;
        }
        let last = *self.items.last().unwrap();
        self.items.swap_remove(p as usize);
        if last != id {
            self.pos[last as usize] = p;
        }
        self.pos[id as usize] = ABSENT;
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn pick<R: Rng>(&self, rng: &mut R) -> FaceId {
        self.items[rng.gen_range(0..self.items.len())]
    }
}

/// One randomized run: collapse a uniformly chosen free pair while any
/// exists, otherwise declare a uniformly chosen top-dimensional face critical.
pub(crate) fn random_run<R: Rng>(arena: &mut Arena<'_>, rng: &mut R, pinned: &[FaceId]) -> Result<Vec<Step>> {
    let ix = arena.ix;
    let n = ix.len();
    let mut steps = Vec::new();
    for &p in pinned {
        if !arena.is_maximal(p) {
            return Err(Error::InvalidArgument(format!("pinned face {} is not a removable maximal face", ix.face(p))));
        }
        arena.remove(p);
        steps.push(Step::Critical(p));
    }
    let mut free = IndexedSet::new(n);
    let mut maximal: Vec<IndexedSet> = (0..=arena.top_dim()).map(|_| IndexedSet::new(n)).collect();
    for i in 0..n as FaceId {
        if arena.is_free(i) {
            free.insert(i);
        } else if arena.is_maximal(i) {
            maximal[ix.dim(i)].insert(i);
        }
    }
    let remove_tracked = |arena: &mut Arena<'_>, free: &mut IndexedSet, maximal: &mut [IndexedSet], id: FaceId| {
        arena.remove(id);
        free.remove(id);
        maximal[ix.dim(id)].remove(id);
        for &d in ix.down(id) {
            if arena.alive[d as usize] && arena.removable[d as usize] {
                match arena.up_alive[d as usize] {
                    1 => free.insert(d),
                    0 => {
                        free.remove(d);
                        maximal[ix.dim(d)].insert(d);
                    }
                    _ => {}
                }
            }
        }
    };
    while arena.remaining > 0 {
        if !free.is_empty() {
            let f = free.pick(rng);
            let c = arena.alive_coface(f);
            remove_tracked(arena, &mut free, &mut maximal, c);
            remove_tracked(arena, &mut free, &mut maximal, f);
            steps.push(Step::Pair(f, c));
        } else {
            let d = (0..maximal.len()).rev().find(|&d| !maximal[d].is_empty()).ok_or_else(|| {
                Error::Construction("removable faces remain but none is maximal".into())
            })?;
            let f = maximal[d].pick(rng);
            remove_tracked(arena, &mut free, &mut maximal, f);
            steps.push(Step::Critical(f));
        }
    }
    Ok(steps)
}

pub(crate) fn critical_counts(ix: &FaceIndex, steps: &[Step], len: usize) -> Vec<usize> {
    let mut c = vec![0; len];
    for s in steps {
        if let Step::Critical(f) = s {
            c[ix.dim(*f)] += 1;
        }
    }
    c
}

pub(crate) fn partners_from_steps(n: usize, steps: &[Step]) -> Vec<Option<FaceId>> {
    let mut partner = vec![None; n];
    for s in steps {
        if let Step::Pair(a, b) = *s {
            partner[a as usize] = Some(b);
            partner[b as usize] = Some(a);
        }
    }
    partner
}

fn rng_for(seed: u64, restart: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Runs `restarts` randomized runs in parallel and returns them in restart order.
pub(crate) fn random_runs(
    ix: &FaceIndex,
    removable: &[bool],
    pinned: &[FaceId],
    seed: u64,
    restarts: u32,
) -> Result<Vec<Vec<Step>>> {
    thread_pool().install(|| {
        (0..restarts.max(1))
            .into_par_iter()
            .map(|r| {
                let mut arena = Arena::new(ix, removable.to_vec());
                random_run(&mut arena, &mut rng_for(seed, r), pinned)
            })
            .collect()
    })
}

/// Bounds on critical counts per dimension, checked at the end of a run.
#[derive(Clone, Debug, Default)]
pub(crate) struct CountBounds {
    pub lower: Vec<Option<usize>>,
    pub upper: Vec<Option<usize>>,
}

impl CountBounds {
    pub fn exact(targets: &[Option<usize>]) -> Self {
        CountBounds { lower: targets.to_vec(), upper: targets.to_vec() }
    }

    pub fn upper_only(upper: Vec<Option<usize>>) -> Self {
        CountBounds { lower: vec![None; upper.len()], upper }
    }

    pub fn accepts(&self, c: &[usize]) -> bool {
        c.iter().enumerate().all(|(d, &x)| {
            self.lower.get(d).copied().flatten().map_or(true, |l| x >= l)
                && self.upper.get(d).copied().flatten().map_or(true, |u| x <= u)
        })
    }

    fn exceeds_upper(&self, c: &[usize]) -> bool {
        c.iter().enumerate().any(|(d, &x)| self.upper.get(d).copied().flatten().is_some_and(|u| x > u))
    }

    fn has_lower(&self, d: usize) -> bool {
        self.lower.get(d).copied().flatten().is_some()
    }
}

pub(crate) enum Goal {
    Minimize,
    Feasible(CountBounds),
}

pub(crate) struct DfsOutcome {
    pub best: Option<(Vec<usize>, Vec<Step>)>,
    /// The search space was exhausted (or optimality was proven).
    pub complete: bool,
}

/// Faces above which homology lower bounds are skipped at interior nodes.
const BOUND_FACE_LIMIT: usize = 600;
const MEMO_LIMIT: usize = 4_000_000;

struct Dfs<'a, 'b> {
    arena: &'b mut Arena<'a>,
    goal: Goal,
    len: usize,
    budget: u64,
    expanded: u64,
    aborted: bool,
    done: bool,
    counts: Vec<usize>,
    path: Vec<Step>,
    best: Option<(Vec<usize>, Vec<Step>)>,
    global_lb: Vec<usize>,
    memo: HashMap<Vec<u64>, Vec<Vec<usize>>>,
    memo_size: usize,
}

fn key_less(a: &[usize], b: &[usize]) -> bool {
    super::matching::vector_key(a) < super::matching::vector_key(b)
}

impl Dfs<'_, '_> {
    fn lower_bound(&self) -> Vec<usize> {
        let mut lb = self.counts.clone();
        if self.arena.remaining <= BOUND_FACE_LIMIT {
            let mask = self.arena.alive_removable_mask();
            let b = betti_masked(self.arena.ix, Some(&mask));
            for (d, x) in b.into_iter().enumerate().take(self.len) {
                lb[d] += x;
            }
        }
        lb
    }

    fn dominated(&self, stored: &[usize], current: &[usize]) -> bool {
        match &self.goal {
            Goal::Minimize => stored.iter().zip(current).all(|(s, c)| s <= c),
            Goal::Feasible(b) => stored
                .iter()
                .zip(current)
                .enumerate()
                .all(|(d, (s, c))| if b.has_lower(d) { s == c } else { s <= c }),
        }
    }

    fn memo_check(&mut self) -> bool {
        let key = self.arena.state_key();
        let counts = self.counts.clone();
        if let Some(list) = self.memo.get(&key) {
            if list.iter().any(|s| self.dominated(s, &counts)) {
                return true;
            }
        }
        if self.memo_size < MEMO_LIMIT {
            let goal_is_min = matches!(self.goal, Goal::Minimize);
            let list = self.memo.entry(key).or_default();
            if goal_is_min {
                list.retain(|s| !s.iter().zip(&counts).all(|(x, c)| c <= x));
            }
            list.push(counts);
            self.memo_size += 1;
        }
        false
    }

    fn visit(&mut self) {
        if self.done {
            return;
        }
        if self.expanded >= self.budget {
            self.aborted = true;
            self.done = true;
            return;
        }
        self.expanded += 1;
        if self.arena.remaining == 0 {
            match &self.goal {
                Goal::Feasible(b) => {
                    if b.accepts(&self.counts) {
                        self.best = Some((self.counts.clone(), self.path.clone()));
                        self.done = true;
                    }
                }
                Goal::Minimize => {
                    if self.best.as_ref().map_or(true, |(c, _)| key_less(&self.counts, c)) {
                        self.best = Some((self.counts.clone(), self.path.clone()));
                        if self.counts == self.global_lb {
                            self.done = true;
                        }
                    }
                }
            }
            return;
        }
        let lb = self.lower_bound();
        match &self.goal {
            Goal::Feasible(b) => {
                if b.exceeds_upper(&lb) {
                    return;
                }
            }
            Goal::Minimize => {
                if let Some((best, _)) = &self.best {
                    if !key_less(&lb, best) {
                        return;
                    }
                }
            }
        }
        if self.memo_check() {
            return;
        }
        let ix = self.arena.ix;
        let n = ix.len() as FaceId;
        let free: Vec<FaceId> = (0..n).filter(|&i| self.arena.is_free(i)).collect();
        for f in free {
            let c = self.arena.alive_coface(f);
            let step = Step::Pair(f, c);
            self.arena.apply(step);
            self.path.push(step);
            self.visit();
            self.path.pop();
            self.arena.undo(step);
            if self.done {
                return;
            }
        }
        let mut maximal: Vec<FaceId> = (0..n).filter(|&i| self.arena.is_maximal(i)).collect();
        maximal.sort_by_key(|&i| (std::cmp::Reverse(ix.dim(i)), i));
        for f in maximal {
            let d = ix.dim(f);
            self.counts[d] += 1;
            let skip = match &self.goal {
                Goal::Feasible(b) => b.exceeds_upper(&self.counts),
                Goal::Minimize => false,
            };
            if !skip {
                let step = Step::Critical(f);
                self.arena.apply(step);
                self.path.push(step);
                self.visit();
                self.path.pop();
                self.arena.undo(step);
            }
            self.counts[d] -= 1;
            if self.done {
                return;
            }
        }
    }
}

/// Exhaustive depth-first search over removal sequences from the arena's
/// current state. `prefix` is the already-applied part of the sequence.
pub(crate) fn dfs_search(
    arena: &mut Arena<'_>,
    goal: Goal,
    budget: u64,
    prefix: Vec<Step>,
    incumbent: Option<(Vec<usize>, Vec<Step>)>,
) -> DfsOutcome {
    let ix = arena.ix;
    let len = arena.top_dim() + 1;
    let counts = critical_counts(ix, &prefix, len);
    let mut global_lb = counts.clone();
    let b = betti_masked(ix, Some(&arena.alive_removable_mask()));
    for (d, x) in b.into_iter().enumerate().take(len) {
        global_lb[d] += x;
    }
    let proven = matches!(goal, Goal::Minimize) && incumbent.as_ref().is_some_and(|(c, _)| *c == global_lb);
    let mut dfs = Dfs {
        arena,
        goal,
        len,
        budget,
        expanded: 0,
        aborted: false,
        done: proven,
        counts,
        path: prefix,
        best: incumbent,
        global_lb,
        memo: HashMap::new(),
        memo_size: 0,
    };
    dfs.visit();
    DfsOutcome { complete: !dfs.aborted, best: dfs.best }
}
