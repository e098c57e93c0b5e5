//! Free-group words over a finite alphabet, stored run-length encoded.
//!
//! Words may be unreduced. Serialization: lowercase letter = positive
//! generator, uppercase = inverse; the empty word prints as `1`. Long words
//! can also be written in run form `a^3 B^2`.

use std::fmt;
use thiserror::Error;

/// Ordered finite set of generator names. Generators are single lowercase
/// ASCII letters so the case convention for inverses works.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("bad generator name {0:?}: want distinct lowercase ascii letters")]
    BadGenerator(char),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("malformed word text: {0}")]
    Malformed(String),
    #[error("substitution requires z1 to start and end with the first generator, positive")]
    BadZ1,
    #[error("substitution requires z2 to start and end with the second generator, positive")]
    BadZ2,
    #[error("substitution input must be over a 2-generator alphabet")]
    BadArity,
}

impl Alphabet {
    pub fn new(letters: &[char]) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, &c) in letters.iter().enumerate() {
            if !c.is_ascii_lowercase() || letters[..i].contains(&c) {
                return Err(WordError::BadGenerator(c));
            }
        }
        Ok(Alphabet {
            letters: letters.to_vec(),
        })
    }

    /// The default two-letter alphabet `{a, b}`.
    pub fn ab() -> Self {
        Alphabet {
            letters: vec!['a', 'b'],
        }
    }

    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn name(&self, gen: u8) -> char {
        self.letters[gen as usize]
    }

    /// All signed letters in the fixed order a < A < b < B < ...
    pub fn signed_letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.rank());
        for g in 0..self.rank() as u8 {
            out.push(Letter::new(g, true));
            out.push(Letter::new(g, false));
        }
        out
    }

    pub fn parse_letter(&self, c: char) -> Result<Letter, WordError> {
        let lower = c.to_ascii_lowercase();
        match self.letters.iter().position(|&l| l == lower) {
            Some(g) => Ok(Letter::new(g as u8, c.is_ascii_lowercase())),
            None => Err(WordError::UnknownLetter(c)),
        }
    }

    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.name(l.gen);
        if l.positive {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }
}

/// A signed generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub positive: bool,
}

impl Letter {
    pub fn new(gen: u8, positive: bool) -> Self {
        Letter { gen, positive }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            positive: !self.positive,
        }
    }

    /// Position in the order a < A < b < B < ...
    pub fn order_index(self) -> usize {
        2 * self.gen as usize + if self.positive { 0 } else { 1 }
    }
}

/// One maximal run of a repeated signed letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub letter: Letter,
    pub count: u64,
}

/// A word: finite sequence of signed letters, run-length encoded.
/// Adjacent runs never carry the same signed letter, so equality of the
/// run vectors is equality of words. Inverse pairs like `aA` are two runs;
/// words need not be reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    runs: Vec<Run>,
}

impl Word {
    pub fn empty() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn run(letter: Letter, count: u64) -> Self {
        if count == 0 {
            Word::empty()
        } else {
            Word {
                runs: vec![Run { letter, count }],
            }
        }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|r| r.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.push_run(Run { letter, count: 1 });
    }

    pub fn push_run(&mut self, run: Run) {
        if run.count == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.letter == run.letter {
                last.count += run.count;
                return;
            }
        }
        self.runs.push(run);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for r in &other.runs {
            w.push_run(*r);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for r in self.runs.iter().rev() {
            w.push_run(Run {
                letter: r.letter.inverse(),
                count: r.count,
            });
        }
        w
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat(r.letter).take(r.count as usize))
    }

    pub fn letter_at(&self, mut pos: u64) -> Option<Letter> {
        for r in &self.runs {
            if pos < r.count {
                return Some(r.letter);
            }
            pos -= r.count;
        }
        None
    }

    /// Free reduction: cancel all adjacent inverse pairs.
    pub fn reduce(&self) -> Word {
        let mut stack: Vec<Run> = Vec::with_capacity(self.runs.len());
        for &run in &self.runs {
            let mut run = run;
            loop {
                match stack.last_mut() {
                    Some(top) if top.letter == run.letter => {
                        top.count += run.count;
                        break;
                    }
                    Some(top) if top.letter == run.letter.inverse() => {
                        let c = top.count.min(run.count);
                        top.count -= c;
                        run.count -= c;
                        if top.count == 0 {
                            stack.pop();
                        }
                        if run.count == 0 {
                            break;
                        }
                    }
                    _ => {
                        stack.push(run);
                        break;
                    }
                }
            }
        }
        Word { runs: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.runs
            .windows(2)
            .all(|w| w[0].letter != w[1].letter.inverse())
    }

    /// Cyclic reduction of the free reduction. Returns `(core, conjugator)`
    /// with `reduce(conjugator · core · conjugator⁻¹) == reduce(self)`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut w = self.reduce();
        let mut conj = Word::empty();
        loop {
            if w.runs.len() < 2 {
                return (w, conj);
            }
            let first = w.runs[0];
            let last = *w.runs.last().unwrap();
            if first.letter != last.letter.inverse() {
                return (w, conj);
            }
            let c = first.count.min(last.count);
            conj.push_run(Run {
                letter: first.letter,
                count: c,
            });
            let n = w.runs.len();
            w.runs[n - 1].count -= c;
            if w.runs[n - 1].count == 0 {
                w.runs.pop();
            }
            w.runs[0].count -= c;
            if w.runs[0].count == 0 {
                w.runs.remove(0);
            }
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        if !self.is_reduced() {
            return false;
        }
        match (self.runs.first(), self.runs.last()) {
            (Some(f), Some(l)) => self.runs.len() == 1 || f.letter != l.letter.inverse(),
            _ => true,
        }
    }

    /// Rotation of the word by `k` letters: `w[k..] · w[..k]`.
    pub fn rotate(&self, k: u64) -> Word {
        let n = self.len();
        if n == 0 {
            return Word::empty();
        }
        let k = k % n;
        if k == 0 {
            return self.clone();
        }
        let (head, tail) = self.split_at(k);
        tail.concat(&head)
    }

    pub fn split_at(&self, k: u64) -> (Word, Word) {
        let mut head = Word::empty();
        let mut tail = Word::empty();
        let mut seen = 0u64;
        for &r in &self.runs {
            if seen >= k {
                tail.push_run(r);
            } else if seen + r.count <= k {
                head.push_run(r);
            } else {
                let split = k - seen;
                head.push_run(Run {
                    letter: r.letter,
                    count: split,
                });
                tail.push_run(Run {
                    letter: r.letter,
                    count: r.count - split,
                });
            }
            seen += r.count;
        }
        (head, tail)
    }

    /// Least rotation of min(w, w⁻¹) in the fixed letter order; the canonical
    /// representative of the congruence class of cyclic words.
    pub fn canonical_cyclic(&self) -> Word {
        let mut best: Option<Vec<Letter>> = None;
        for w in [self.clone(), self.inverse()] {
            let letters: Vec<Letter> = w.letters().collect();
            let n = letters.len();
            for s in 0..n.max(1) {
                if n == 0 {
                    break;
                }
                let rot: Vec<Letter> = (0..n).map(|i| letters[(s + i) % n]).collect();
                let key: Vec<usize> = rot.iter().map(|l| l.order_index()).collect();
                let better = match &best {
                    None => true,
                    Some(b) => key < b.iter().map(|l| l.order_index()).collect::<Vec<_>>(),
                };
                if better {
                    best = Some(rot);
                }
            }
        }
        match best {
            Some(letters) => Word::from_letters(letters),
            None => Word::empty(),
        }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains('^') || text.contains(' ') {
            return Word::parse_runs(alphabet, text);
        }
        let mut w = Word::empty();
        for c in text.chars() {
            w.push(alphabet.parse_letter(c)?);
        }
        Ok(w)
    }

    /// Parse run form `a^3 B^2 a`.
    fn parse_runs(alphabet: &Alphabet, text: &str) -> Result<Word, WordError> {
        let mut w = Word::empty();
        for tok in text.split_whitespace() {
            let mut chars = tok.chars();
            let c = chars
                .next()
                .ok_or_else(|| WordError::Malformed(tok.to_string()))?;
            let letter = alphabet.parse_letter(c)?;
            let rest: String = chars.collect();
            let count = if rest.is_empty() {
                1
            } else {
                let exp = rest
                    .strip_prefix('^')
                    .ok_or_else(|| WordError::Malformed(tok.to_string()))?;
                exp.parse::<u64>()
                    .map_err(|_| WordError::Malformed(tok.to_string()))?
            };
            w.push_run(Run { letter, count });
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
            rle: false,
        }
    }

    pub fn display_rle<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
            rle: true,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
    rle: bool,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        if self.rle {
            let mut first = true;
            for r in self.word.runs() {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if r.count == 1 {
                    write!(f, "{}", self.alphabet.letter_char(r.letter))?;
                } else {
                    write!(f, "{}^{}", self.alphabet.letter_char(r.letter), r.count)?;
                }
            }
            Ok(())
        } else {
            for l in self.word.letters() {
                write!(f, "{}", self.alphabet.letter_char(l))?;
            }
            Ok(())
        }
    }
}

/// Substitute `z1` for the first generator and `z2` for the second generator
/// of `t`'s alphabet. When `z1` starts and ends with the first generator
/// positive and `z2` with the second generator positive, the result of
/// substituting into a reduced `t` is reduced.
pub fn substitute(t: &Word, z1: &Word, z2: &Word) -> Result<Word, WordError> {
    check_z_condition(z1, 0).map_err(|_| WordError::BadZ1)?;
    check_z_condition(z2, 1).map_err(|_| WordError::BadZ2)?;
    if t.runs().iter().any(|r| r.letter.gen > 1) {
        return Err(WordError::BadArity);
    }
    let mut out = Word::empty();
    for l in t.letters() {
        let z = if l.gen == 0 { z1 } else { z2 };
        let piece = if l.positive { z.clone() } else { z.inverse() };
        out = out.concat(&piece);
    }
    Ok(out)
}

/// `z` must be cyclically reduced, nonempty, and start and end with the
/// generator `gen` taken positively.
pub fn check_z_condition(z: &Word, gen: u8) -> Result<(), ()> {
    if z.is_empty() || !z.is_cyclically_reduced() {
        return Err(());
    }
    let first = z.runs().first().unwrap().letter;
    let last = z.runs().last().unwrap().letter;
    let want = Letter::new(gen, true);
    if first == want && last == want {
        Ok(())
    } else {
        Err(())
    }
}

/// Whether two occurrences of pieces are taken among the words only or among
/// the words and their inverses (the small-cancellation reading).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OccurrenceRule {
    WordsOnly,
    WithInverses,
}

/// A common-factor witness: the factor length and its two occurrences,
/// each `(word index, positive sign?, start position)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceWitness {
    pub len: u64,
    pub occ1: (usize, bool, u64),
    pub occ2: (usize, bool, u64),
}

/// Longest factor occurring at two distinct occurrences among the family
/// (an occurrence is the tuple (word, sign, position); distinct means the
/// tuples differ). Returns 0 if there is none.
pub fn max_piece_length(family: &[Word], rule: OccurrenceRule) -> u64 {
    max_piece(family, rule).map_or(0, |w| w.len)
}

/// As `max_piece_length` but with a witness for the maximum.
pub fn max_piece(family: &[Word], rule: OccurrenceRule) -> Option<PieceWitness> {
    let mut best: Option<PieceWitness> = None;
    scan_pieces(family, rule, |w| {
        if best.as_ref().map_or(true, |b| w.len > b.len) {
            best = Some(w);
        }
    });
    best
}

/// Report every (locally maximal) repeated factor to `sink`, one call per
/// same-letter run pair. Runs in O(R²) for R total runs, independent of
/// letter counts, so multi-megaletter families are fine.
pub fn scan_pieces<F: FnMut(PieceWitness)>(family: &[Word], rule: OccurrenceRule, mut sink: F) {
    // Flattened run array over all strings with separators (None).
    #[derive(Clone, Copy)]
    struct Slot {
        run: Run,
        string: usize,
        sign: bool,
        // start position of this run inside its string
        pos: u64,
    }
    let mut slots: Vec<Option<Slot>> = Vec::new();
    let push_string = |slots: &mut Vec<Option<Slot>>, w: &Word, string: usize, sign: bool| {
        if w.is_empty() {
            return;
        }
        if !slots.is_empty() {
            slots.push(None);
        }
        let mut pos = 0u64;
        for &run in w.runs() {
            slots.push(Some(Slot {
                run,
                string,
                sign,
                pos,
            }));
            pos += run.count;
        }
    };
    for (i, w) in family.iter().enumerate() {
        push_string(&mut slots, w, i, true);
        if rule == OccurrenceRule::WithInverses {
            push_string(&mut slots, &w.inverse(), i, false);
        }
    }
    let n = slots.len();
    if n == 0 {
        return;
    }

    // ext[i*n+j] = number of consecutive equal full runs starting at i and j.
    let mut ext = vec![0u32; n * n];
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            if i == j {
                continue;
            }
            if let (Some(a), Some(b)) = (&slots[i], &slots[j]) {
                if a.run == b.run {
                    let next = if i + 1 < n && j + 1 < n {
                        ext[(i + 1) * n + j + 1]
                    } else {
                        0
                    };
                    ext[i * n + j] = next + 1;
                }
            }
        }
    }
    let prefix: Vec<u64> = {
        let mut p = vec![0u64; n + 1];
        for i in 0..n {
            p[i + 1] = p[i] + slots[i].map_or(0, |s| s.run.count);
        }
        p
    };

    let occ = |s: &Slot, offset: u64| (s.string, s.sign, s.pos + offset);

    for i in 0..n {
        let a = match &slots[i] {
            Some(a) => *a,
            None => continue,
        };
        // Two occurrences inside the single run i.
        if a.run.count >= 2 {
            sink(PieceWitness {
                len: a.run.count - 1,
                occ1: occ(&a, 0),
                occ2: occ(&a, 1),
            });
        }
        for j in (i + 1)..n {
            let b = match &slots[j] {
                Some(b) => *b,
                None => continue,
            };
            if a.run.letter != b.run.letter {
                continue;
            }
            // Single-run piece across the two runs.
            let single = a.run.count.min(b.run.count);
            sink(PieceWitness {
                len: single,
                occ1: occ(&a, a.run.count - single),
                occ2: occ(&b, b.run.count - single),
            });
            // Multi-run pieces: partial first runs, equal interior, last runs
            // with equal letters. Piece length grows with the interior, so
            // only the largest valid interior matters.
            let m = if i + 1 < n && j + 1 < n {
                ext[(i + 1) * n + j + 1] as usize
            } else {
                0
            };
            let letters_match = |x: usize, y: usize| -> bool {
                match (slots.get(x).and_then(|s| *s), slots.get(y).and_then(|s| *s)) {
                    (Some(sx), Some(sy)) => sx.run.letter == sy.run.letter,
                    _ => false,
                }
            };
            let first = a.run.count.min(b.run.count);
            if letters_match(i + m + 1, j + m + 1) {
                let interior = prefix[i + m + 1] - prefix[i + 1];
                let la = slots[i + m + 1].unwrap().run.count;
                let lb = slots[j + m + 1].unwrap().run.count;
                let last = la.min(lb);
                sink(PieceWitness {
                    len: first + interior + last,
                    occ1: occ(&a, a.run.count - first),
                    occ2: occ(&b, b.run.count - first),
                });
            } else if m >= 1 {
                let interior = prefix[i + m + 1] - prefix[i + 1];
                sink(PieceWitness {
                    len: first + interior,
                    occ1: occ(&a, a.run.count - first),
                    occ2: occ(&b, b.run.count - first),
                });
            }
        }
    }
}

/// Longest factor of `u` that is also a factor of some concatenation of
/// copies of `z1^{±1}` and `z2^{±1}`. Computed by sliding over `u` with the
/// subset automaton of positions inside the four blocks; runs are fast-forwarded
/// once the state profile increments uniformly.
pub fn max_common_factor_with_z(u: &Word, z1: &Word, z2: &Word) -> u64 {
    let blocks: Vec<Vec<Letter>> = [z1.clone(), z1.inverse(), z2.clone(), z2.inverse()]
        .iter()
        .map(|w| w.letters().collect())
        .filter(|v: &Vec<Letter>| !v.is_empty())
        .collect();
    if blocks.is_empty() || u.is_empty() {
        return 0;
    }
    // state (b, t): just consumed letter t (1-based) of block b. value =
    // longest live suffix ending in that state; 0 = dead.
    let nstates: usize = blocks.iter().map(|b| b.len()).sum();
    let index: Vec<(usize, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(bi, b)| (1..=b.len()).map(move |t| (bi, t)))
        .collect();
    let mut prev = vec![0u64; nstates];
    let mut best = 0u64;

    let step = |prev: &[u64], letter: Letter| -> Vec<u64> {
        let mut carry = 0u64;
        for (s, &(bi, t)) in index.iter().enumerate() {
            if t == blocks[bi].len() && prev[s] > carry {
                carry = prev[s];
            }
        }
        index
            .iter()
            .enumerate()
            .map(|(s, &(bi, t))| {
                if blocks[bi][t - 1] != letter {
                    return 0;
                }
                let cont = if t == 1 { carry } else { prev[s - 1] };
                cont + 1
            })
            .collect()
    };

    for run in u.runs() {
        let mut remaining = run.count;
        // Simulate enough single steps to reach a steady profile, then jump.
        let warmup = (2 * nstates as u64 + 4).min(remaining);
        for _ in 0..warmup {
            let next = step(&prev, run.letter);
            best = best.max(next.iter().copied().max().unwrap_or(0));
            prev = next;
            remaining -= 1;
        }
        while remaining > 0 {
            let next = step(&prev, run.letter);
            let uniform = prev
                .iter()
                .zip(next.iter())
                .all(|(&p, &q)| if p == 0 { q == 0 } else { q == p + 1 })
                && next.iter().any(|&q| q > 0);
            best = best.max(next.iter().copied().max().unwrap_or(0));
            prev = next;
            remaining -= 1;
            if uniform && remaining > 0 {
                best = best.max(
                    prev.iter()
                        .copied()
                        .max()
                        .unwrap_or(0)
                        .saturating_add(remaining),
                );
                for v in prev.iter_mut() {
                    if *v > 0 {
                        *v += remaining;
                    }
                }
                remaining = 0;
            }
        }
    }
    best
}

/// Number of reduced words of length `n`.
fn reduced_count(rank: u64, n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        2 * rank * (2 * rank - 1).pow(n - 1)
    }
}

/// Fixed total injective enumeration of all reduced words: by length, then
/// lexicographic in the order a < A < b < B < ...
pub fn enumerate_words(alphabet: &Alphabet, k: u64) -> Word {
    let rank = alphabet.rank() as u64;
    if k == 0 {
        return Word::empty();
    }
    let mut k = k - 1;
    let mut n = 1u32;
    loop {
        let c = reduced_count(rank, n);
        if k < c {
            break;
        }
        k -= c;
        n += 1;
    }
    // k indexes length-n reduced words: first letter from 2·rank choices,
    // each later letter from 2·rank−1 choices (skipping the inverse of the
    // previous letter, keeping the fixed order).
    let s = 2 * rank - 1;
    let mut digits = Vec::with_capacity(n as usize);
    let mut rem = k;
    let mut weight = s.pow(n - 1);
    let first = rem / weight;
    rem %= weight;
    digits.push(first);
    for _ in 1..n {
        weight /= s;
        digits.push(rem / weight);
        rem %= weight;
    }
    let all = alphabet.signed_letters();
    let mut letters = Vec::with_capacity(n as usize);
    let mut prev: Option<Letter> = None;
    for d in digits {
        let choices: Vec<Letter> = all
            .iter()
            .copied()
            .filter(|&l| prev.map_or(true, |p| l != p.inverse()))
            .collect();
        let l = choices[d as usize];
        letters.push(l);
        prev = Some(l);
    }
    Word::from_letters(letters)
}

/// Index of a reduced word in the `enumerate_words` order.
pub fn word_index(alphabet: &Alphabet, w: &Word) -> u64 {
    assert!(w.is_reduced());
    let rank = alphabet.rank() as u64;
    let letters: Vec<Letter> = w.letters().collect();
    let n = letters.len() as u32;
    if n == 0 {
        return 0;
    }
    let mut base = 1u64;
    for m in 1..n {
        base += reduced_count(rank, m);
    }
    let s = 2 * rank - 1;
    let all = alphabet.signed_letters();
    let mut offset = 0u64;
    let mut prev: Option<Letter> = None;
    for (i, &l) in letters.iter().enumerate() {
        let choices: Vec<Letter> = all
            .iter()
            .copied()
            .filter(|&c| prev.map_or(true, |p| c != p.inverse()))
            .collect();
        let d = choices.iter().position(|&c| c == l).unwrap() as u64;
        offset += d * s.pow(n - 1 - i as u32);
        prev = Some(l);
    }
    base + offset
}

/// Cantor diagonal pairing over the word enumeration.
pub fn enumerate_pairs(alphabet: &Alphabet, k: u64) -> (Word, Word) {
    let (x, y) = cantor_unpair(k);
    (enumerate_words(alphabet, x), enumerate_words(alphabet, y))
}

fn cantor_unpair(k: u64) -> (u64, u64) {
    // largest s with s(s+1)/2 <= k
    let mut s = (((8.0 * k as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while (s + 1) * (s + 2) / 2 <= k {
        s += 1;
    }
    while s * (s + 1) / 2 > k {
        s -= 1;
    }
    let rem = k - s * (s + 1) / 2;
    (s - rem, rem)
}

#[cfg(test)]
pub mod testutil {
    use super::*;

    pub fn w(text: &str) -> Word {
        Word::parse(&Alphabet::ab(), text).unwrap()
    }

    pub fn s(word: &Word) -> String {
        word.display(&Alphabet::ab()).to_string()
    }

    /// Brute-force piece oracle: enumerate all occurrences of all factors.
    pub fn naive_max_piece(family: &[Word], rule: OccurrenceRule) -> u64 {
        let mut strings: Vec<Vec<Letter>> = Vec::new();
        for w in family {
            strings.push(w.letters().collect());
            if rule == OccurrenceRule::WithInverses {
                strings.push(w.inverse().letters().collect());
            }
        }
        let mut best = 0u64;
        let mut occs: std::collections::HashMap<Vec<Letter>, Vec<(usize, usize)>> =
            std::collections::HashMap::new();
        for (si, s) in strings.iter().enumerate() {
            for i in 0..s.len() {
                for j in (i + 1)..=s.len() {
                    occs.entry(s[i..j].to_vec()).or_default().push((si, i));
                }
            }
        }
        for (factor, positions) in occs {
            if positions.len() >= 2 {
                best = best.max(factor.len() as u64);
            }
        }
        best
    }

    /// Bounded-unrolling oracle for z-factors: all concatenations of at most
    /// `depth` blocks, direct substring check.
    pub fn naive_z_factor(u: &Word, z1: &Word, z2: &Word, depth: usize) -> u64 {
        let blocks = [z1.clone(), z1.inverse(), z2.clone(), z2.inverse()];
        let uletters: Vec<Letter> = u.letters().collect();
        let mut concats: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut best = 0u64;
        for _ in 0..depth {
            let mut next = Vec::new();
            for c in &concats {
                for b in &blocks {
                    let mut ext = c.clone();
                    ext.extend(b.letters());
                    next.push(ext);
                }
            }
            concats = next;
            for c in &concats {
                for i in 0..uletters.len() {
                    for j in (i + 1)..=uletters.len() {
                        let f = &uletters[i..j];
                        if c.windows(f.len()).any(|w| w == f) {
                            best = best.max(f.len() as u64);
                        }
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn reduce_examples() {
        assert_eq!(s(&w("aA").reduce()), "1");
        assert_eq!(s(&w("abBA").reduce()), "1");
        assert_eq!(s(&w("abAB").reduce()), "abAB");
    }

    #[test]
    fn reduce_is_idempotent_retraction() {
        let mut rng = Rng::new(1);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..500 {
            let n = rng.below(14);
            let word = Word::from_letters((0..n).map(|_| *rng.pick(&letters)));
            let red = word.reduce();
            assert_eq!(red.reduce(), red);
            assert!(red.len() <= word.len());
            assert_eq!(red.len() % 2, word.len() % 2);
            assert!(red.is_reduced());
            assert_eq!(word.concat(&word.inverse()).reduce(), Word::empty());
        }
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("Aba").cyclic_reduce();
        assert_eq!(s(&core), "b");
        assert_eq!(s(&conj), "A");
        let (core, conj) = w("abAB").cyclic_reduce();
        assert_eq!(s(&core), "abAB");
        assert_eq!(s(&conj), "1");
        let (core, conj) = w("aa").cyclic_reduce();
        assert_eq!(s(&core), "aa");
        assert_eq!(s(&conj), "1");
    }

    #[test]
    fn cyclic_reduce_conjugation_law() {
        let mut rng = Rng::new(2);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..500 {
            let n = rng.below(12);
            let word = Word::from_letters((0..n).map(|_| *rng.pick(&letters)));
            let (core, conj) = word.cyclic_reduce();
            assert!(core.is_cyclically_reduced());
            let recomposed = conj.concat(&core).concat(&conj.inverse()).reduce();
            assert_eq!(recomposed, word.reduce());
        }
    }

    #[test]
    fn cyclic_core_invariant_under_rotation() {
        let mut rng = Rng::new(3);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..200 {
            let n = 1 + rng.below(10);
            let word =
                Word::from_letters((0..n).map(|_| *rng.pick(&letters))).reduce();
            if word.is_empty() {
                continue;
            }
            let (core, _) = word.cyclic_reduce();
            let k = rng.below(word.len() as usize) as u64;
            let (rcore, _) = word.rotate(k).cyclic_reduce();
            assert_eq!(core.canonical_cyclic(), rcore.canonical_cyclic());
        }
    }

    #[test]
    fn substitute_examples() {
        let z1 = w("aa");
        let z2 = w("bb");
        assert_eq!(s(&substitute(&w("ab"), &z1, &z2).unwrap()), "aabb");
        assert_eq!(s(&substitute(&w("aB"), &z1, &z2).unwrap()), "aaBB");
        assert_eq!(s(&substitute(&w("a"), &z1, &z2).unwrap()), "aa");
        assert!(substitute(&w("a"), &w("ab"), &z2).is_err());
        assert!(substitute(&w("a"), &z1, &w("ba")).is_err());
    }

    #[test]
    fn substitute_preserves_reduction() {
        let z1 = w("aa");
        let z2 = w("bb");
        let mut rng = Rng::new(4);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..300 {
            let n = rng.below(13);
            let t = Word::from_letters((0..n).map(|_| *rng.pick(&letters))).reduce();
            let out = substitute(&t, &z1, &z2).unwrap();
            assert!(out.is_reduced());
            assert_eq!(out.len(), 2 * t.len());
        }
    }

    #[test]
    fn piece_examples() {
        let fam = [w("aabb")];
        assert_eq!(max_piece_length(&fam, OccurrenceRule::WithInverses), 1);
        let fam = [w("aabb"), w("abab")];
        assert_eq!(max_piece_length(&fam, OccurrenceRule::WithInverses), 2);
        // Confirmed by the brute-force oracle: "ab" has no repeated factor
        // among {ab, BA} under the occurrence-tuple rule.
        let fam = [w("ab")];
        assert_eq!(
            naive_max_piece(&fam, OccurrenceRule::WithInverses),
            max_piece_length(&fam, OccurrenceRule::WithInverses)
        );
        assert_eq!(max_piece_length(&fam, OccurrenceRule::WithInverses), 0);
    }

    #[test]
    fn piece_scan_matches_oracle() {
        let mut rng = Rng::new(5);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..400 {
            let k = 1 + rng.below(3);
            let mut fam = Vec::new();
            let mut total = 0;
            for _ in 0..k {
                let n = rng.below(12);
                total += n;
                if total > 60 {
                    break;
                }
                fam.push(Word::from_letters((0..n).map(|_| *rng.pick(&letters))));
            }
            if fam.is_empty() {
                continue;
            }
            for rule in [OccurrenceRule::WordsOnly, OccurrenceRule::WithInverses] {
                assert_eq!(
                    max_piece_length(&fam, rule),
                    naive_max_piece(&fam, rule),
                    "family {:?}",
                    fam.iter().map(s).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn piece_scan_handles_huge_runs() {
        // a^(10^6) b a^(10^6): factor a^(10^6) appears twice.
        let mut word = Word::empty();
        word.push_run(Run { letter: Letter::new(0, true), count: 1_000_000 });
        word.push(Letter::new(1, true));
        word.push_run(Run { letter: Letter::new(0, true), count: 1_000_000 });
        assert_eq!(
            max_piece_length(&[word], OccurrenceRule::WordsOnly),
            1_000_000
        );
    }

    #[test]
    fn z_factor_examples() {
        let z1 = w("aa");
        let z2 = w("bb");
        assert_eq!(max_common_factor_with_z(&w("aaa"), &z1, &z2), 3);
        assert_eq!(max_common_factor_with_z(&w("ba"), &z1, &z2), 2);
        assert_eq!(max_common_factor_with_z(&Word::empty(), &z1, &z2), 0);
        // interior runs must be full blocks: "aba" itself is not a factor,
        // but its subword "ab" lies in "aabb"
        assert_eq!(max_common_factor_with_z(&w("aba"), &z1, &z2), 2);
        assert_eq!(max_common_factor_with_z(&w("abab"), &z1, &z2), 2);
    }

    #[test]
    fn z_factor_matches_bounded_oracle() {
        let z1 = w("aa");
        let z2 = w("bb");
        let mut rng = Rng::new(6);
        let letters = Alphabet::ab().signed_letters();
        for _ in 0..150 {
            let n = rng.below(7);
            let u = Word::from_letters((0..n).map(|_| *rng.pick(&letters)));
            let fast = max_common_factor_with_z(&u, &z1, &z2);
            let slow = naive_z_factor(&u, &z1, &z2, 4);
            // the oracle sees factors of length <= 8 reliably with depth 4
            assert_eq!(fast.min(8), slow.min(8), "u = {}", s(&u));
        }
    }

    #[test]
    fn z_factor_fast_forward_long_runs() {
        let z1 = w("aa");
        let z2 = w("bb");
        let mut u = Word::empty();
        u.push_run(Run { letter: Letter::new(0, true), count: 2_000_000 });
        assert_eq!(max_common_factor_with_z(&u, &z1, &z2), 2_000_000);
        let mut v = Word::empty();
        v.push_run(Run { letter: Letter::new(1, true), count: 3 });
        v.push_run(Run { letter: Letter::new(0, true), count: 1_000_000 });
        // b^3 clips a b^4 = z2 z2 run, then continues into a-blocks.
        assert_eq!(
            max_common_factor_with_z(&v, &z1, &z2),
            3 + 1_000_000
        );
    }

    #[test]
    fn enumeration_examples() {
        let ab = Alphabet::ab();
        assert_eq!(s(&enumerate_words(&ab, 0)), "1");
        assert_eq!(s(&enumerate_words(&ab, 1)), "a");
        assert_eq!(s(&enumerate_words(&ab, 2)), "A");
        assert_eq!(s(&enumerate_words(&ab, 3)), "b");
        assert_eq!(s(&enumerate_words(&ab, 4)), "B");
        assert_eq!(s(&enumerate_words(&ab, 5)), "aa");
        let (v, w0) = enumerate_pairs(&ab, 0);
        assert_eq!((s(&v), s(&w0)), ("1".into(), "1".into()));
    }

    #[test]
    fn enumeration_is_injective_and_complete() {
        let ab = Alphabet::ab();
        // all reduced words of length <= 4: 1 + 4 + 12 + 36 + 108 = 161
        let mut seen = std::collections::HashSet::new();
        let mut lengths = std::collections::HashMap::new();
        for k in 0..161 {
            let word = enumerate_words(&ab, k);
            assert!(word.is_reduced());
            assert!(seen.insert(s(&word)), "duplicate at {}", k);
            *lengths.entry(word.len()).or_insert(0u32) += 1;
            assert_eq!(word_index(&ab, &word), k);
        }
        assert_eq!(lengths[&0], 1);
        assert_eq!(lengths[&1], 4);
        assert_eq!(lengths[&2], 12);
        assert_eq!(lengths[&3], 36);
        assert_eq!(lengths[&4], 108);
    }

    #[test]
    fn pair_enumeration_diagonal() {
        let ab = Alphabet::ab();
        let mut seen = std::collections::HashSet::new();
        for k in 0..200 {
            let (v, w) = enumerate_pairs(&ab, k);
            assert!(seen.insert((s(&v), s(&w))));
        }
        // pair (5, 7) appears at the cantor index for (x=5, y=7)
        let idx = (5u64 + 7) * (5 + 7 + 1) / 2 + 7;
        let (v, w) = enumerate_pairs(&ab, idx);
        assert_eq!(s(&v), s(&enumerate_words(&ab, 5)));
        assert_eq!(s(&w), s(&enumerate_words(&ab, 7)));
    }

    #[test]
    fn parse_roundtrip() {
        let ab = Alphabet::ab();
        for text in ["1", "a", "abAB", "aabb"] {
            let word = Word::parse(&ab, text).unwrap();
            assert_eq!(word.display(&ab).to_string(), text);
        }
        let word = Word::parse(&ab, "a^3 B^2 a").unwrap();
        assert_eq!(word.display(&ab).to_string(), "aaaBBa");
        assert_eq!(word.display_rle(&ab).to_string(), "a^3 B^2 a");
        assert!(Word::parse(&ab, "xyz").is_err());
    }
}
