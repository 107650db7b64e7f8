use num_integer::Integer;

use super::{PointSet, PointSetError, Provenance};

/// Radical inverse of `n` in base `b` as `(numerator, b^k)` where `k` is the
/// number of base-`b` digits of `n` (`k = 0` for `n = 0`).
pub fn radical_inverse(mut n: u64, b: u64) -> (u64, u64) {
    let (mut num, mut den) = (0u64, 1u64);
    while n > 0 {
        num = num * b + n % b;
        den *= b;
        n /= b;
    }
    (num, den)
}

/// Halton points `n = start .. start + count`.
///
/// Each column uses the denominator `b_j^K` with `K` the digit count of the
/// largest index, so the coordinates are exact. Non-coprime bases are rejected
/// unless `allow_non_coprime` is set.
pub fn halton(bases: &[u64], count: usize, start: u64, allow_non_coprime: bool) -> Result<PointSet, PointSetError> {
    for (i, &b) in bases.iter().enumerate() {
        if b < 2 {
            return Err(PointSetError::BadBase(b));
        }
        if !allow_non_coprime {
            if let Some(&c) = bases[..i].iter().find(|&&c| c.gcd(&b) != 1) {
                return Err(PointSetError::NonCoprimeBases(c, b));
            }
        }
    }
    let last = start + count.saturating_sub(1) as u64;
    let mut dens = Vec::with_capacity(bases.len());
    for &b in bases {
        let (_, d) = radical_inverse(last.max(1), b);
        // the next power must not overflow during scaling
        d.checked_mul(b).ok_or(PointSetError::Overflow)?;
        dens.push(d);
    }
    let mut nums = Vec::with_capacity(count * bases.len());
    for n in start..start + count as u64 {
        for (j, &b) in bases.iter().enumerate() {
            let (num, den) = radical_inverse(n, b);
            nums.push(num * (dens[j] / den));
        }
    }
    Ok(PointSet::exact(
        bases.len(),
        dens,
        nums,
        Provenance::Halton { bases: bases.to_vec(), n: count, start },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_examples() {
        assert_eq!(radical_inverse(1, 2), (1, 2));
        assert_eq!(radical_inverse(2, 2), (1, 4));
        assert_eq!(radical_inverse(3, 2), (3, 4));
        assert_eq!(radical_inverse(5, 3), (7, 9));
        assert_eq!(radical_inverse(0, 7), (0, 1));
    }

    #[test]
    fn columns() {
        let h = halton(&[2, 3], 6, 0, false).unwrap();
        assert_eq!(h.point(0), vec![0.0, 0.0]);
        assert_eq!(h.exact_coord(5, 1), Some((7, 9)));
        assert_eq!(h.exact_coord(3, 0), Some((6, 8)));
        assert!(matches!(halton(&[2, 4], 3, 0, false), Err(PointSetError::NonCoprimeBases(2, 4))));
        assert!(halton(&[2, 4], 3, 0, true).is_ok());
        assert!(halton(&[1], 3, 0, false).is_err());
    }

    #[test]
    fn start_offset_matches_slice() {
        let full = halton(&[2, 3, 5], 40, 0, false).unwrap();
        let tail = halton(&[2, 3, 5], 20, 20, false).unwrap();
        for i in 0..20 {
            assert_eq!(full.point(20 + i), tail.point(i));
        }
    }
}
