//! Dehornoy handle reduction. Independent of the Garside code, so the two serve
//! as oracles for each other.

use alloc::vec::Vec;

use super::BraidWord;

/// Reduce `w` until it has no handles. The result is empty exactly when `w`
/// is the trivial braid.
pub fn handle_reduce(w: &BraidWord) -> BraidWord {
    let mut letters: Vec<i16> = w.freely_reduced().letters().to_vec();
    let mut from = 0;
    while let Some((s, e)) = first_handle(&letters, from) {
        let i = letters[s].abs();
        let sign = letters[s].signum();
        let mut repl = Vec::with_capacity(3 * (e - s));
        for &x in &letters[s + 1..e] {
            if x.abs() == i + 1 {
                repl.extend_from_slice(&[-sign * (i + 1), x.signum() * i, sign * (i + 1)]);
            } else {
                repl.push(x);
            }
        }
        letters.splice(s..=e, repl);
        from = s;
    }
    BraidWord::from_parts_unchecked(w.strands(), letters)
}

/// The handle whose right end comes first, scanning right ends from `from`.
/// Such a handle cannot contain another one, so reducing it is permitted.
fn first_handle(letters: &[i16], from: usize) -> Option<(usize, usize)> {
    for j in from..letters.len() {
        let x = letters[j];
        let i = x.abs();
        for k in (0..j).rev() {
            let y = letters[k];
            let a = y.abs();
            if a == i {
                if y == -x {
                    return Some((k, j));
                }
                break;
            }
            if a == i - 1 {
                break;
            }
        }
    }
    None
}
