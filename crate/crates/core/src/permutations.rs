//! Permutation polynomials, complete mappings and check-digit systems over `F_q`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FieldElement, Poly, PrimeField};
use crate::oracles::is_bijection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("q must be an odd prime, got {0}")]
    EvenCharacteristic(u32),
    #[error("polynomial is not a permutation of F_{0}")]
    NotPermutation(u32),
    #[error("word length must be at least 2, got {0}")]
    WordLength(usize),
    #[error("expected a word of length {expected}, got {got}")]
    WrongWordLength { expected: usize, got: usize },
    #[error("symbol {symbol} at position {position} is outside F_{q}")]
    SymbolOutOfRange { position: usize, symbol: u32, q: u32 },
    #[error("malformed ISBN-10 `{0}`: {1}")]
    MalformedIsbn(String, &'static str),
    #[error("exhaustive check over q={q}, s={s} exceeds the budget (q <= 31, s <= 6, at most {max_words} valid words); use smaller parameters")]
    BudgetExceeded { q: u32, s: usize, max_words: u64 },
}

fn checked_field(f: &Poly, q: u32) -> Result<PrimeField, PermutationError> {
    let field = PrimeField::new(q)?;
    if f.modulus() != q {
        return Err(AlgebraError::ModulusMismatch(f.modulus(), q).into());
    }
    Ok(field)
}

/// True iff `a -> f(a)` is a bijection of `F_q` (exhaustive evaluation).
pub fn is_permutation_poly(f: &Poly, q: u32) -> Result<bool, PermutationError> {
    checked_field(f, q)?;
    Ok(is_bijection(&f.value_table(), q))
}

/// True iff both `f` and `f + X` permute `F_q`.
///
/// Complete mappings are normally considered for `q > 2`; for `q = 2` this
/// still answers the question as posed (and always returns `false`).
pub fn is_complete_mapping(f: &Poly, q: u32) -> Result<bool, PermutationError> {
    let field = checked_field(f, q)?;
    let table = f.value_table();
    if !is_bijection(&table, q) {
        return Ok(false);
    }
    let shifted: Vec<_> = table.iter().enumerate().map(|(a, &v)| field.add(v, a as u32)).collect();
    Ok(is_bijection(&shifted, q))
}

/// `X^((q+1)/2) + bX`.
pub fn fb_poly(b: FieldElement, q: u32) -> Poly {
    let e = (q as usize).div_ceil(2);
    let mut coeffs = vec![0u64; e + 1];
    coeffs[e] += 1;
    coeffs[1] += u64::from(b);
    Poly::new(q, coeffs)
}

/// Closed-form test: `b^2 - 1` and `b^2 + 2b` are both squares of nonzero elements.
pub fn fb_criterion(b: FieldElement, q: u32) -> Result<bool, PermutationError> {
    let field = PrimeField::new(q)?;
    if q.is_multiple_of(2) {
        return Err(PermutationError::EvenCharacteristic(q));
    }
    let b = b % q;
    let b2 = field.mul(b, b);
    let minus_one = field.sub(b2, 1);
    let plus_2b = field.add(b2, field.mul(2, b));
    Ok(field.is_nonzero_square(minus_one) && field.is_nonzero_square(plus_2b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FbSweep {
    pub q: u32,
    /// Number of `b` for which `f_b` is a complete mapping (exhaustive check).
    pub count: usize,
    /// Those `b`, ascending.
    pub witnesses: Vec<FieldElement>,
    /// `b` where the exhaustive check and [`fb_criterion`] disagree, ascending.
    pub mismatches: Vec<FieldElement>,
}

/// Exhaustive sweep of `b in F_q`, cross-checked against [`fb_criterion`].
pub fn fb_sweep(q: u32) -> Result<FbSweep, PermutationError> {
    PrimeField::new(q)?;
    if q.is_multiple_of(2) {
        return Err(PermutationError::EvenCharacteristic(q));
    }
    let rows: Vec<(u32, bool, bool)> = (0..q)
        .into_par_iter()
        .map(|b| {
            let exhaustive = is_complete_mapping(&fb_poly(b, q), q).expect("valid field");
            let closed = fb_criterion(b, q).expect("odd prime");
            (b, exhaustive, closed)
        })
        .collect();
    let witnesses: Vec<_> = rows.iter().filter(|r| r.1).map(|r| r.0).collect();
    let mismatches = rows.iter().filter(|r| r.1 != r.2).map(|r| r.0).collect();
    Ok(FbSweep { q, count: witnesses.len(), witnesses, mismatches })
}

/// Check-digit system defined by one permutation polynomial.
///
/// A word `a_1 .. a_s` is valid iff `sum_{i=0}^{s-1} f^(i)(a_{i+1}) = c`,
/// with `f^(0) = X` and `f^(i) = f o f^(i-1)`. Iterates are stored as value
/// tables rather than composed symbolically.
#[derive(Debug, Clone)]
pub struct CheckDigitSystem {
    field: PrimeField,
    f: Poly,
    control: FieldElement,
    len: usize,
    iterates: Vec<Vec<FieldElement>>,
    last_inverse: Vec<FieldElement>,
}

impl CheckDigitSystem {
    pub fn new(f: Poly, control: FieldElement, len: usize) -> Result<Self, PermutationError> {
        let q = f.modulus();
        let field = PrimeField::new(q)?;
        if len < 2 {
            return Err(PermutationError::WordLength(len));
        }
        let table = f.value_table();
        if !is_bijection(&table, q) {
            return Err(PermutationError::NotPermutation(q));
        }
        let mut iterates = Vec::with_capacity(len);
        iterates.push((0..q).collect::<Vec<_>>());
        for i in 1..len {
            let prev: &Vec<u32> = &iterates[i - 1];
            let next = prev.iter().map(|&v| table[v as usize]).collect();
            iterates.push(next);
        }
        let mut last_inverse = vec![0; q as usize];
        for (a, &v) in iterates[len - 1].iter().enumerate() {
            last_inverse[v as usize] = a as u32;
        }
        Ok(CheckDigitSystem { field, f, control: control % q, len, iterates, last_inverse })
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn control(&self) -> FieldElement {
        self.control
    }

    fn check_symbols(&self, word: &[u32]) -> Result<(), PermutationError> {
        let q = self.q();
        match word.iter().position(|&a| a >= q) {
            Some(position) => Err(PermutationError::SymbolOutOfRange { position, symbol: word[position], q }),
            None => Ok(()),
        }
    }

    fn weighted(&self, word: &[u32]) -> FieldElement {
        word.iter()
            .enumerate()
            .fold(0, |acc, (i, &a)| self.field.add(acc, self.iterates[i][a as usize]))
    }

    /// The unique `a_s` completing `word` (length `s - 1`) to a valid word.
    pub fn check_digit(&self, word: &[u32]) -> Result<FieldElement, PermutationError> {
        if word.len() + 1 != self.len {
            return Err(PermutationError::WrongWordLength { expected: self.len - 1, got: word.len() });
        }
        self.check_symbols(word)?;
        let need = self.field.sub(self.control, self.weighted(word));
        Ok(self.last_inverse[need as usize])
    }

    pub fn validate(&self, word: &[u32]) -> Result<bool, PermutationError> {
        if word.len() != self.len {
            return Err(PermutationError::WrongWordLength { expected: self.len, got: word.len() });
        }
        self.check_symbols(word)?;
        Ok(self.weighted(word) == self.control)
    }

    fn is_valid_unchecked(&self, word: &[u32]) -> bool {
        self.weighted(word) == self.control
    }
}

/// Check-digit system equivalent to ISBN-10: `q = 11`, `f(X) = 2X`, `c = 0`, `s = 10`.
pub fn isbn10_system() -> CheckDigitSystem {
    CheckDigitSystem::new(Poly::new(11, [0, 2]), 0, 10).expect("2X permutes F_11")
}

/// Parsed ISBN-10 digit string (values `0..=10`, `X` = 10).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isbn10 {
    digits: [u32; 10],
}

impl Isbn10 {
    /// Strips hyphens and spaces; requires exactly ten symbols, with `X` only in last place.
    pub fn parse(code: &str) -> Result<Self, PermutationError> {
        let mut digits = [0u32; 10];
        let mut n = 0;
        for ch in code.chars().filter(|c| *c != '-' && !c.is_whitespace()) {
            if n == 10 {
                return Err(PermutationError::MalformedIsbn(code.into(), "more than 10 symbols"));
            }
            digits[n] = match ch {
                '0'..='9' => ch as u32 - '0' as u32,
                'X' | 'x' if n == 9 => 10,
                'X' | 'x' => {
                    return Err(PermutationError::MalformedIsbn(code.into(), "X is only allowed as the check symbol"))
                }
                _ => return Err(PermutationError::MalformedIsbn(code.into(), "unexpected character")),
            };
            n += 1;
        }
        if n != 10 {
            return Err(PermutationError::MalformedIsbn(code.into(), "fewer than 10 symbols"));
        }
        Ok(Isbn10 { digits })
    }

    pub fn digits(&self) -> &[u32; 10] {
        &self.digits
    }

    /// `sum_{i=1}^{10} i * x_i` over the integers.
    pub fn weighted_sum(&self) -> u32 {
        self.digits.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum()
    }

    pub fn is_valid(&self) -> bool {
        self.weighted_sum().is_multiple_of(11)
    }

    /// Reorders digits as `a_i = x_{2^(i-1) mod 11}`, the word checked by [`isbn10_system`].
    pub fn to_system_word(&self) -> Vec<u32> {
        let mut idx = 1u32;
        (0..10)
            .map(|_| {
                let a = self.digits[idx as usize - 1];
                idx = idx * 2 % 11;
                a
            })
            .collect()
    }
}

/// `Ok(true)` for a correct ISBN-10, `Ok(false)` for a checksum failure, `Err` if malformed.
pub fn isbn10_validate(code: &str) -> Result<bool, PermutationError> {
    Ok(Isbn10::parse(code)?.is_valid())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    /// `a -> b` at `position`
    Single,
    /// `ab -> ba` at `position, position + 1`
    NeighborTransposition,
    /// `aa -> bb` at `position, position + 1`
    Twin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub class: ErrorClass,
    /// Valid word in which the error goes undetected.
    pub word_index: u64,
    /// Zero-based position of the (first) altered symbol.
    pub position: usize,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionReport {
    pub detects_single: bool,
    pub detects_neighbor_transposition: bool,
    pub detects_twin: bool,
    /// At most one counterexample per class.
    pub counterexamples: Vec<Counterexample>,
}

const DETECTION_MAX_WORDS: u64 = 1_000_000;

/// Decodes the `index`-th word of length `s - 1` (base-`q` digits, first symbol most significant).
pub fn word_from_index(index: u64, q: u32, len: usize) -> Vec<u32> {
    let mut w = vec![0u32; len];
    let mut t = index;
    for slot in w.iter_mut().rev() {
        *slot = (t % u64::from(q)) as u32;
        t /= u64::from(q);
    }
    w
}

/// Exhaustively perturbs every valid word by every single error, neighbor
/// transposition and twin error, and reports which classes always break validity.
pub fn detection_report(sys: &CheckDigitSystem) -> Result<DetectionReport, PermutationError> {
    let q = sys.q();
    let s = sys.word_len();
    let words = u64::from(q).checked_pow(s as u32 - 1).unwrap_or(u64::MAX);
    if q > 31 || s > 6 || words > DETECTION_MAX_WORDS {
        return Err(PermutationError::BudgetExceeded { q, s, max_words: DETECTION_MAX_WORDS });
    }
    let mut found: [Option<Counterexample>; 3] = [None, None, None];
    let mut word = vec![0u32; s];
    for idx in 0..words {
        let prefix = word_from_index(idx, q, s - 1);
        word[..s - 1].copy_from_slice(&prefix);
        word[s - 1] = sys.check_digit(&prefix)?;
        for pos in 0..s {
            let orig = word[pos];
            for b in (0..q).filter(|&b| b != orig) {
                if found[0].is_none() {
                    word[pos] = b;
                    if sys.is_valid_unchecked(&word) {
                        found[0] = Some(Counterexample { class: ErrorClass::Single, word_index: idx, position: pos, a: orig, b });
                    }
                    word[pos] = orig;
                }
            }
            if pos + 1 == s {
                continue;
            }
            let (a, c) = (word[pos], word[pos + 1]);
            if a != c && found[1].is_none() {
                word.swap(pos, pos + 1);
                if sys.is_valid_unchecked(&word) {
                    found[1] = Some(Counterexample {
                        class: ErrorClass::NeighborTransposition,
                        word_index: idx,
                        position: pos,
                        a,
                        b: c,
                    });
                }
                word.swap(pos, pos + 1);
            }
            if a == c && found[2].is_none() {
                for b in (0..q).filter(|&b| b != a) {
                    word[pos] = b;
                    word[pos + 1] = b;
                    let hit = sys.is_valid_unchecked(&word);
                    word[pos] = a;
                    word[pos + 1] = a;
                    if hit {
                        found[2] = Some(Counterexample { class: ErrorClass::Twin, word_index: idx, position: pos, a, b });
                        break;
                    }
                }
            }
        }
    }
    Ok(DetectionReport {
        detects_single: found[0].is_none(),
        detects_neighbor_transposition: found[1].is_none(),
        detects_twin: found[2].is_none(),
        counterexamples: found.into_iter().flatten().collect(),
    })
}

/// Rebuilds the valid word a counterexample refers to, and the corrupted word.
pub fn replay_counterexample(sys: &CheckDigitSystem, ce: &Counterexample) -> (Vec<u32>, Vec<u32>) {
    let s = sys.word_len();
    let mut word = word_from_index(ce.word_index, sys.q(), s - 1);
    word.push(sys.check_digit(&word).expect("in range"));
    let mut bad = word.clone();
    match ce.class {
        ErrorClass::Single => bad[ce.position] = ce.b,
        ErrorClass::NeighborTransposition => bad.swap(ce.position, ce.position + 1),
        ErrorClass::Twin => {
            bad[ce.position] = ce.b;
            bad[ce.position + 1] = ce.b;
        }
    }
    (word, bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(q: u32, a: u64) -> Poly {
        Poly::new(q, [0, a])
    }

    #[test]
    fn permutation_examples() {
        assert!(is_permutation_poly(&lin(11, 2), 11).unwrap());
        assert!(!is_permutation_poly(&Poly::new(5, [0, 0, 1]), 5).unwrap());
        for q in [2, 3, 5, 7, 13] {
            assert!(is_permutation_poly(&Poly::x(q), q).unwrap());
        }
        assert!(is_permutation_poly(&Poly::x(5), 7).is_err());
    }

    #[test]
    fn complete_mapping_examples() {
        assert!(is_complete_mapping(&lin(5, 2), 5).unwrap());
        assert!(!is_complete_mapping(&lin(5, 4), 5).unwrap());
        assert!(is_complete_mapping(&Poly::x(5), 5).unwrap());
        assert!(!is_complete_mapping(&Poly::zero(5), 5).unwrap());
    }

    #[test]
    fn fb_examples_q7() {
        assert!(fb_criterion(3, 7).unwrap());
        assert!(is_complete_mapping(&fb_poly(3, 7), 7).unwrap());
        assert!(!fb_criterion(0, 7).unwrap());
        assert!(matches!(fb_criterion(1, 2), Err(PermutationError::EvenCharacteristic(2))));
        assert!(fb_sweep(4).is_err());
    }

    #[test]
    fn fb_sweep_agrees_up_to_49() {
        for q in (5..=49).filter(|&q| crate::algebra::is_prime(q)) {
            let sweep = fb_sweep(q as u32).unwrap();
            assert!(sweep.mismatches.is_empty(), "q={q}: {:?}", sweep.mismatches);
            assert!(sweep.witnesses.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn linear_check_digit() {
        let sys = CheckDigitSystem::new(Poly::x(5), 0, 3).unwrap();
        assert_eq!(sys.check_digit(&[1, 2]).unwrap(), 2);
        assert!(sys.validate(&[1, 2, 2]).unwrap());
        assert!(matches!(sys.check_digit(&[1, 7]), Err(PermutationError::SymbolOutOfRange { position: 1, .. })));
        assert!(sys.check_digit(&[1]).is_err());
        assert!(CheckDigitSystem::new(Poly::new(5, [0, 0, 1]), 0, 3).is_err());
        assert!(CheckDigitSystem::new(Poly::x(5), 0, 1).is_err());
    }

    #[test]
    fn check_digit_is_unique_completion() {
        // x^3 + 3 permutes F_5 since gcd(3, 4) = 1
        let sys = CheckDigitSystem::new(Poly::new(5, [3, 0, 0, 1]), 4, 4).unwrap();
        for idx in 0..5u64.pow(3) {
            let w = word_from_index(idx, 5, 3);
            let d = sys.check_digit(&w).unwrap();
            for e in 0..5 {
                let mut full = w.clone();
                full.push(e);
                assert_eq!(sys.validate(&full).unwrap(), e == d);
            }
        }
    }

    #[test]
    fn isbn_examples() {
        let isbn = Isbn10::parse("0-521-39231-4").unwrap();
        assert_eq!(isbn.weighted_sum(), 176);
        assert!(isbn.is_valid());
        assert_eq!(Isbn10::parse("0-521-39231-5").unwrap().weighted_sum(), 186);
        assert!(!isbn10_validate("0-521-39231-5").unwrap());
        assert!(isbn10_validate("1111111111").unwrap());
        assert!(isbn10_validate("0 52139 2314").unwrap());
        assert!(isbn10_validate("0-8044-2957-X").unwrap());
        assert!(isbn10_validate("0-521-3923").is_err());
        assert!(isbn10_validate("0-521-39231-44").is_err());
        assert!(isbn10_validate("0-5X1-39231-4").is_err());
        assert!(isbn10_validate("0-521-3923a-4").is_err());
    }

    #[test]
    fn isbn_matches_check_digit_system() {
        let sys = isbn10_system();
        for code in ["0-521-39231-4", "0-521-39231-5", "1111111111", "0-8044-2957-X", "3-540-65367-7"] {
            let isbn = Isbn10::parse(code).unwrap();
            assert_eq!(sys.validate(&isbn.to_system_word()).unwrap(), isbn.is_valid(), "{code}");
        }
    }

    #[test]
    fn isbn_system_detects_everything() {
        let sys = CheckDigitSystem::new(lin(11, 2), 0, 4).unwrap();
        let r = detection_report(&sys).unwrap();
        assert!(r.detects_single && r.detects_neighbor_transposition && r.detects_twin);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn identity_system_misses_transpositions() {
        let sys = CheckDigitSystem::new(Poly::x(5), 0, 3).unwrap();
        let r = detection_report(&sys).unwrap();
        assert!(r.detects_single);
        assert!(!r.detects_neighbor_transposition);
        assert!(r.detects_twin);
        for ce in &r.counterexamples {
            let (good, bad) = replay_counterexample(&sys, ce);
            assert_ne!(good, bad);
            assert!(sys.validate(&good).unwrap() && sys.validate(&bad).unwrap());
        }
    }

    #[test]
    fn detection_budget() {
        let sys = CheckDigitSystem::new(Poly::x(37), 0, 3).unwrap();
        assert!(matches!(detection_report(&sys), Err(PermutationError::BudgetExceeded { .. })));
    }
}
