//! Staircase posets, Young books and their major-index generating functions.
//!
//! Cells are stored in the order of the fixed linear extension ω, so a cell's
//! index is `ω(c) - 1`. Order ideals are bitmasks over those indices.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Composition, Partition};
use crate::qexact::LaurentSeries;

/// Default bound on the number of cells for enumeration and maj generating
/// functions.
pub const DEFAULT_GUARD: usize = 25;

/// Hard limit imposed by the 64-bit ideal representation.
const MASK_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    /// Page number, or 0 for a shared diagonal cell.
    pub page: u32,
    pub row: i32,
    pub col: u32,
}

impl Cell {
    pub fn is_diagonal(&self) -> bool {
        self.page == 0
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[p{} r{} c{}]", self.page, self.row, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircasePoset {
    n: usize,
    rvec: Composition,
    svec: Composition,
    /// Cells in ω order.
    cells: Vec<Cell>,
    /// Cover relations `preds[c]` / `succs[c]` by cell index.
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    /// For each cell, the set of cells strictly below it.
    below: Vec<u64>,
}

/// Builds the poset of an `(n, r⃗, s⃗)`-staircase.
pub fn build_poset(n: usize, rvec: &Composition, svec: &Composition) -> Result<StaircasePoset> {
    if n == 0 {
        return Err(Error::BadShape("n must be at least 1".into()));
    }
    if rvec.len() != svec.len() || rvec.is_empty() {
        return Err(Error::BadShape(format!(
            "r and s must be nonempty with equal lengths, got {} and {}",
            rvec.len(),
            svec.len()
        )));
    }
    let ni = n as i32;
    let mut raw: Vec<Cell> = (1..=ni).map(|i| Cell { page: 0, row: i, col: i as u32 }).collect();
    for (k, (&r, &s)) in rvec.parts().iter().zip(svec.parts()).enumerate() {
        let page = k as u32 + 1;
        for row in (1 - r as i32)..=ni {
            let first = if row >= 1 { row as u32 } else { 1 };
            for col in first..=(n as u32 + s) {
                if row >= 1 && col == row as u32 {
                    continue;
                }
                raw.push(Cell { page, row, col });
            }
        }
    }
    raw.sort_by_key(|c| (c.row, c.page, c.col));
    let index: HashMap<Cell, usize> = raw.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let lookup = |page: u32, row: i32, col: u32| -> Option<usize> {
        let key = if row >= 1 && col == row as u32 {
            Cell { page: 0, row, col }
        } else {
            Cell { page, row, col }
        };
        index.get(&key).copied()
    };

    let size = raw.len();
    let mut preds = vec![Vec::new(); size];
    let mut succs = vec![Vec::new(); size];
    let pages = rvec.len() as u32;
    for (i, c) in raw.iter().enumerate() {
        let on_pages: Vec<u32> = if c.is_diagonal() { (1..=pages).collect() } else { vec![c.page] };
        for p in on_pages {
            for (dr, dc) in [(0, 1), (1, 0)] {
                if let Some(j) = lookup(p, c.row + dr, c.col + dc as u32) {
                    if !succs[i].contains(&j) {
                        succs[i].push(j);
                        preds[j].push(i);
                    }
                }
            }
        }
    }
    for (i, ss) in succs.iter().enumerate() {
        if ss.iter().any(|&j| j <= i) {
            return Err(Error::ContractViolation(format!("ω is not a linear extension at {}", raw[i])));
        }
    }
    let below = if size <= MASK_LIMIT {
        let mut below = vec![0u64; size];
        for i in 0..size {
            for &p in &preds[i] {
                below[i] |= below[p] | (1u64 << p);
            }
        }
        below
    } else {
        Vec::new()
    };
    Ok(StaircasePoset { n, rvec: rvec.clone(), svec: svec.clone(), cells: raw, preds, succs, below })
}

impl StaircasePoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rvec(&self) -> &Composition {
        &self.rvec
    }

    pub fn svec(&self) -> &Composition {
        &self.svec
    }

    /// Number of cells `N`.
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// `m C(n,2) + (r+s+1) n + sum r_k s_k`.
    pub fn expected_size(&self) -> usize {
        let m = self.rvec.len();
        let n = self.n;
        let r = self.rvec.total() as usize;
        let s = self.svec.total() as usize;
        let rs: usize = self.rvec.parts().iter().zip(self.svec.parts()).map(|(&a, &b)| (a * b) as usize).sum();
        m * n * (n - 1) / 2 + (r + s + 1) * n + rs
    }

    /// Cells in ω order: `cells()[i]` has `ω = i + 1`.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn omega(&self, c: &Cell) -> Option<usize> {
        self.cells.iter().position(|x| x == c).map(|i| i + 1)
    }

    pub fn covers(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.succs.iter().enumerate().flat_map(move |(i, ss)| ss.iter().map(move |&j| (self.cells[i], self.cells[j])))
    }

    pub fn diagonal_indices(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.cells[i].is_diagonal()).collect()
    }

    fn check_guard(&self, guard: usize) -> Result<()> {
        if self.size() > guard.min(MASK_LIMIT) {
            return Err(Error::TooLarge(format!("poset has {} cells, guard is {}", self.size(), guard.min(MASK_LIMIT))));
        }
        Ok(())
    }

    fn pred_mask(&self, i: usize) -> u64 {
        self.preds[i].iter().fold(0u64, |m, &p| m | (1u64 << p))
    }
}

/// A filling of the staircase: `fill[i]` is the entry (1-based) of the cell
/// with ω index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungBook<'a> {
    poset: &'a StaircasePoset,
    fill: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookCellJson {
    pub page: u32,
    pub row: i32,
    pub col: u32,
    pub entry: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookJson {
    pub cells: Vec<BookCellJson>,
}

impl<'a> YoungBook<'a> {
    /// Checks that `fill` is a bijection onto `1..=N` increasing along covers.
    pub fn new(poset: &'a StaircasePoset, fill: Vec<u32>) -> Result<Self> {
        let size = poset.size();
        if fill.len() != size {
            return Err(Error::Invalid(format!("fill has {} entries, poset has {size} cells", fill.len())));
        }
        let mut seen = vec![false; size];
        for &v in &fill {
            if v == 0 || v as usize > size || std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::Invalid(format!("fill is not a permutation of 1..={size}")));
            }
        }
        for (i, ss) in poset.succs.iter().enumerate() {
            if let Some(&j) = ss.iter().find(|&&j| fill[i] >= fill[j]) {
                return Err(Error::Invalid(format!("entries decrease from {} to {}", poset.cells[i], poset.cells[j])));
            }
        }
        Ok(YoungBook { poset, fill })
    }

    /// The book with cells taken in the given order (`seq[k]` gets entry k+1).
    pub fn from_sequence(poset: &'a StaircasePoset, seq: &[usize]) -> Result<Self> {
        let mut fill = vec![0u32; poset.size()];
        for (k, &c) in seq.iter().enumerate() {
            if c >= fill.len() {
                return Err(Error::Invalid(format!("cell index {c} out of range")));
            }
            fill[c] = k as u32 + 1;
        }
        Self::new(poset, fill)
    }

    /// Reads a filling listed cell by cell, in any order.
    pub fn from_json(poset: &'a StaircasePoset, json: &BookJson) -> Result<Self> {
        let mut fill = vec![0u32; poset.size()];
        if json.cells.len() != fill.len() {
            return Err(Error::Invalid(format!("{} cells listed, poset has {}", json.cells.len(), fill.len())));
        }
        for c in &json.cells {
            let cell = Cell { page: c.page, row: c.row, col: c.col };
            let i = poset.omega(&cell).ok_or_else(|| Error::Invalid(format!("{cell} is not a cell of the poset")))?;
            fill[i - 1] = c.entry;
        }
        Self::new(poset, fill)
    }

    /// The book whose entries are ω itself.
    pub fn omega_book(poset: &'a StaircasePoset) -> Self {
        YoungBook { poset, fill: (1..=poset.size() as u32).collect() }
    }

    pub fn poset(&self) -> &StaircasePoset {
        self.poset
    }

    pub fn fill(&self) -> &[u32] {
        &self.fill
    }

    pub fn entry(&self, c: &Cell) -> Option<u32> {
        self.poset.cells.iter().position(|x| x == c).map(|i| self.fill[i])
    }

    /// `cell_of()[k]` is the ω index of the cell containing `k + 1`.
    pub fn cell_of(&self) -> Vec<usize> {
        let mut inv = vec![0usize; self.fill.len()];
        for (i, &v) in self.fill.iter().enumerate() {
            inv[v as usize - 1] = i;
        }
        inv
    }

    /// Descents read off the book: the row of `i+1` has a smaller label, or
    /// both entries are off the diagonal in the same row and `i+1` lies on an
    /// earlier page.
    pub fn descents(&self) -> Vec<u32> {
        let inv = self.cell_of();
        (1..self.fill.len())
            .filter(|&i| {
                let a = self.poset.cells[inv[i - 1]];
                let b = self.poset.cells[inv[i]];
                b.row < a.row || (!a.is_diagonal() && !b.is_diagonal() && b.row == a.row && b.page < a.page)
            })
            .map(|i| i as u32)
            .collect()
    }

    /// Descents of the permutation `ω π^{-1}`.
    pub fn permutation_descents(&self) -> Vec<u32> {
        let word: Vec<usize> = self.cell_of();
        (1..word.len()).filter(|&i| word[i - 1] > word[i]).map(|i| i as u32).collect()
    }

    pub fn maj(&self) -> u64 {
        self.descents().iter().map(|&d| d as u64).sum()
    }

    pub fn to_json(&self) -> BookJson {
        BookJson {
            cells: self
                .poset
                .cells
                .iter()
                .zip(&self.fill)
                .map(|(c, &entry)| BookCellJson { page: c.page, row: c.row, col: c.col, entry })
                .collect(),
        }
    }
}

impl fmt::Display for YoungBook<'_> {
    /// One block per page, rows top to bottom; absent cells print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poset;
        let width = p.size().to_string().len();
        for (k, (&r, &s)) in p.rvec.parts().iter().zip(p.svec.parts()).enumerate() {
            writeln!(f, "page {}", k + 1)?;
            for row in (1 - r as i32)..=p.n as i32 {
                let line: Vec<String> = (1..=(p.n as u32 + s))
                    .map(|col| {
                        let page = if row >= 1 && col == row as u32 { 0 } else { k as u32 + 1 };
                        match self.entry(&Cell { page, row, col }) {
                            Some(v) => format!("{v:>width$}"),
                            None => format!("{:>width$}", "."),
                        }
                    })
                    .collect();
                writeln!(f, "{:>3} | {}", row, line.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Streams all Young books of a poset by backtracking; at each step the
/// currently minimal cells are tried in ω order.
pub struct BookIter<'a> {
    poset: &'a StaircasePoset,
    /// Remaining uncovered predecessors per cell.
    pending: Vec<usize>,
    seq: Vec<usize>,
    /// Candidate lists per depth and the position of the next one to try.
    stack: Vec<(Vec<usize>, usize)>,
    done: bool,
}

impl<'a> BookIter<'a> {
    fn available(&self) -> Vec<usize> {
        let placed: Vec<bool> = {
            let mut v = vec![false; self.poset.size()];
            for &c in &self.seq {
                v[c] = true;
            }
            v
        };
        (0..self.poset.size()).filter(|&c| !placed[c] && self.pending[c] == 0).collect()
    }

    fn place(&mut self, c: usize) {
        self.seq.push(c);
        for &s in &self.poset.succs[c] {
            self.pending[s] -= 1;
        }
    }

    fn unplace(&mut self) {
        let c = self.seq.pop().expect("nonempty sequence");
        for &s in &self.poset.succs[c] {
            self.pending[s] += 1;
        }
    }
}

impl<'a> Iterator for BookIter<'a> {
    type Item = YoungBook<'a>;

    fn next(&mut self) -> Option<YoungBook<'a>> {
        if self.done {
            return None;
        }
        let size = self.poset.size();
        loop {
            if self.seq.len() == size && !self.stack.is_empty() {
                // Resume after a yielded book.
                self.unplace();
            }
            let Some((cands, pos)) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            if *pos >= cands.len() {
                self.stack.pop();
                if self.stack.is_empty() {
                    self.done = true;
                    return None;
                }
                self.unplace();
                continue;
            }
            let c = cands[*pos];
            *pos += 1;
            self.place(c);
            if self.seq.len() == size {
                let book = YoungBook::from_sequence(self.poset, &self.seq).expect("backtracking yields valid books");
                return Some(book);
            }
            let next = self.available();
            self.stack.push((next, 0));
        }
    }
}

pub fn enumerate_young_books(poset: &StaircasePoset, guard: usize) -> Result<BookIter<'_>> {
    poset.check_guard(guard)?;
    let pending: Vec<usize> = poset.preds.iter().map(Vec::len).collect();
    let mut it = BookIter { poset, pending, seq: Vec::new(), stack: Vec::new(), done: false };
    let first = it.available();
    it.stack.push((first, 0));
    Ok(it)
}

/// Number of linear extensions, by memoization over order ideals.
pub fn count_books(poset: &StaircasePoset) -> Result<u128> {
    poset.check_guard(MASK_LIMIT)?;
    let size = poset.size();
    let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    let pm: Vec<u64> = (0..size).map(|i| poset.pred_mask(i)).collect();
    let mut memo: HashMap<u64, u128> = HashMap::new();
    fn go(ideal: u64, full: u64, pm: &[u64], memo: &mut HashMap<u64, u128>) -> Result<u128> {
        if ideal == full {
            return Ok(1);
        }
        if let Some(&v) = memo.get(&ideal) {
            return Ok(v);
        }
        let mut total: u128 = 0;
        for (c, &m) in pm.iter().enumerate() {
            if ideal & (1u64 << c) == 0 && m & !ideal == 0 {
                let sub = go(ideal | (1u64 << c), full, pm, memo)?;
                total = total.checked_add(sub).ok_or(Error::Overflow)?;
            }
        }
        memo.insert(ideal, total);
        Ok(total)
    }
    go(0, full, &pm, &mut memo)
}

fn add_shifted(dst: &mut Vec<u128>, src: &[u128], shift: usize, cap: Option<usize>) -> Result<()> {
    let top = src.len() + shift;
    let top = cap.map_or(top, |c| top.min(c + 1));
    if dst.len() < top {
        dst.resize(top, 0);
    }
    for (k, &v) in src.iter().enumerate() {
        let d = k + shift;
        if d >= top {
            break;
        }
        if v != 0 {
            dst[d] = dst[d].checked_add(v).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

fn series_from_counts(coeffs: &[u128], trunc: Option<i64>) -> LaurentSeries {
    let s = LaurentSeries::from_terms(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (2 * k as i64, BigRational::from_integer(BigInt::from(c)))),
    );
    match trunc {
        Some(t) => s.truncate(t),
        None => s,
    }
}

/// `sum_B q^{maj(B)}` by dynamic programming over (order ideal, last cell).
///
/// A descent at `i` occurs exactly when the cell holding `i + 1` precedes the
/// cell holding `i` in ω, so the statistic only depends on the last cell.
pub fn maj_gf(poset: &StaircasePoset, guard: usize) -> Result<LaurentSeries> {
    maj_gf_impl(poset, guard, None)
}

/// `maj_gf` modulo `q^{max_deg + 1}`.
pub fn maj_gf_trunc(poset: &StaircasePoset, guard: usize, max_deg: usize) -> Result<LaurentSeries> {
    maj_gf_impl(poset, guard, Some(max_deg))
}

fn maj_gf_impl(poset: &StaircasePoset, guard: usize, cap: Option<usize>) -> Result<LaurentSeries> {
    poset.check_guard(guard)?;
    let size = poset.size();
    let pm: Vec<u64> = (0..size).map(|i| poset.pred_mask(i)).collect();
    let mut layer: HashMap<(u64, usize), Vec<u128>> = HashMap::new();
    for c in 0..size {
        if pm[c] == 0 {
            layer.insert((1u64 << c, c), vec![1]);
        }
    }
    for placed in 1..size {
        let mut next: HashMap<(u64, usize), Vec<u128>> = HashMap::with_capacity(layer.len());
        for ((ideal, last), poly) in &layer {
            for c in 0..size {
                if ideal & (1u64 << c) != 0 || pm[c] & !ideal != 0 {
                    continue;
                }
                let shift = if c < *last { placed } else { 0 };
                let entry = next.entry((ideal | (1u64 << c), c)).or_default();
                add_shifted(entry, poly, shift, cap)?;
            }
        }
        layer = next;
    }
    let mut total: Vec<u128> = Vec::new();
    for poly in layer.values() {
        add_shifted(&mut total, poly, 0, cap)?;
    }
    Ok(series_from_counts(&total, cap.map(|c| 2 * (c as i64 + 1))))
}

/// `maj_gf` by explicit enumeration of every book.
pub fn maj_gf_bruteforce(poset: &StaircasePoset, guard: usize) -> Result<LaurentSeries> {
    let mut counts: Vec<u128> = Vec::new();
    for book in enumerate_young_books(poset, guard)? {
        let m = book.maj() as usize;
        if counts.len() <= m {
            counts.resize(m + 1, 0);
        }
        counts[m] += 1;
    }
    Ok(series_from_counts(&counts, None))
}

/// Number of books whose descent set is exactly `descents`, and the first
/// `limit` of them in backtracking order.
pub fn books_with_descent_set<'a>(
    poset: &'a StaircasePoset,
    descents: &[u32],
    limit: usize,
) -> Result<(u128, Vec<YoungBook<'a>>)> {
    poset.check_guard(MASK_LIMIT)?;
    let size = poset.size();
    let mut want = vec![false; size + 1];
    for &d in descents {
        if d == 0 || d as usize >= size {
            return Err(Error::Invalid(format!("descent {d} outside 1..{}", size - 1)));
        }
        want[d as usize] = true;
    }
    let pm: Vec<u64> = (0..size).map(|i| poset.pred_mask(i)).collect();
    let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };

    // Completions counted per (ideal, last cell).
    let mut memo: HashMap<(u64, usize), u128> = HashMap::new();
    fn count(
        ideal: u64,
        last: usize,
        placed: usize,
        full: u64,
        pm: &[u64],
        want: &[bool],
        memo: &mut HashMap<(u64, usize), u128>,
    ) -> Result<u128> {
        if ideal == full {
            return Ok(1);
        }
        if let Some(&v) = memo.get(&(ideal, last)) {
            return Ok(v);
        }
        let mut total = 0u128;
        for (c, &m) in pm.iter().enumerate() {
            if ideal & (1u64 << c) == 0 && m & !ideal == 0 && (c < last) == want[placed] {
                let sub = count(ideal | (1u64 << c), c, placed + 1, full, pm, want, memo)?;
                total = total.checked_add(sub).ok_or(Error::Overflow)?;
            }
        }
        memo.insert((ideal, last), total);
        Ok(total)
    }
    let mut total = 0u128;
    for c in (0..size).filter(|&c| pm[c] == 0) {
        total = total.checked_add(count(1u64 << c, c, 1, full, &pm, &want, &mut memo)?).ok_or(Error::Overflow)?;
    }

    // Walk only through states with a nonzero completion count.
    let mut found = Vec::new();
    let mut seq: Vec<usize> = Vec::new();
    fn walk<'a>(
        poset: &'a StaircasePoset,
        ideal: u64,
        seq: &mut Vec<usize>,
        ctx: (&[u64], &[bool], u64, &HashMap<(u64, usize), u128>),
        limit: usize,
        out: &mut Vec<YoungBook<'a>>,
    ) {
        let (pm, want, full, memo) = ctx;
        if out.len() >= limit {
            return;
        }
        if ideal == full {
            out.push(YoungBook::from_sequence(poset, seq).expect("walk yields valid books"));
            return;
        }
        for (c, &m) in pm.iter().enumerate() {
            if ideal & (1u64 << c) != 0 || m & !ideal != 0 {
                continue;
            }
            if let Some(&last) = seq.last() {
                if (c < last) != want[seq.len()] {
                    continue;
                }
            }
            let next = ideal | (1u64 << c);
            let live = next == full || memo.get(&(next, c)).copied().unwrap_or(0) > 0;
            if live {
                seq.push(c);
                walk(poset, next, seq, ctx, limit, out);
                seq.pop();
            }
        }
    }
    walk(poset, 0, &mut seq, (&pm, &want, full, &memo), limit, &mut found);
    Ok((total, found))
}

/// `sum q^{|σ|}` over P-partitions with `|σ| <= k`, modulo `q^{k+1}`. With a
/// profile, only σ whose diagonal reading equals it are counted.
pub fn ppartition_gf(poset: &StaircasePoset, k: u32, profile: Option<&Partition>) -> Result<LaurentSeries> {
    poset.check_guard(MASK_LIMIT)?;
    let size = poset.size();
    let mut fixed: Vec<Option<u32>> = vec![None; size];
    if let Some(mu) = profile {
        let parts = mu.padded(poset.n)?;
        for (d, idx) in poset.diagonal_indices().into_iter().enumerate() {
            fixed[idx] = Some(parts[d]);
        }
    }
    let weight: Vec<u32> = (0..size).map(|i| 1 + poset.below[i].count_ones()).collect();
    let mut counts = vec![0u128; k as usize + 1];
    let mut values = vec![0u32; size];

    struct Ctx<'p> {
        poset: &'p StaircasePoset,
        fixed: Vec<Option<u32>>,
        weight: Vec<u32>,
    }
    fn dfs(ctx: &Ctx, pos: usize, used: u32, budget: u32, values: &mut [u32], counts: &mut [u128]) -> Result<()> {
        let Some(c) = pos.checked_sub(1) else {
            counts[used as usize] = counts[used as usize].checked_add(1).ok_or(Error::Overflow)?;
            return Ok(());
        };
        let lo = ctx.poset.succs[c].iter().map(|&s| values[s]).max().unwrap_or(0);
        let left = budget - used;
        let range: Vec<u32> = match ctx.fixed[c] {
            Some(v) if v >= lo => vec![v],
            Some(_) => Vec::new(),
            None => (lo..=left).collect(),
        };
        for v in range {
            // Every cell below c must be at least v.
            if v.saturating_mul(ctx.weight[c]) > left {
                break;
            }
            values[c] = v;
            dfs(ctx, c, used + v, budget, values, counts)?;
        }
        Ok(())
    }
    let ctx = Ctx { poset, fixed, weight };
    dfs(&ctx, size, 0, k, &mut values, &mut counts)?;
    Ok(series_from_counts(&counts, Some(2 * (k as i64 + 1))))
}
