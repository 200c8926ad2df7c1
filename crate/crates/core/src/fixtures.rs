//! Small named diagrams used throughout the tests and examples.

use crate::braid::BraidWord;
use crate::diagram::LinkDiagram;

fn closure(strands: usize, letters: &[i32]) -> LinkDiagram {
    BraidWord::new(strands, letters.to_vec()).expect("fixture words are valid").closure()
}

/// Closure of σ₁³ on two strands.
pub fn pos_trefoil() -> LinkDiagram {
    closure(2, &[1, 1, 1]).with_name("pos_trefoil")
}

/// Closure of σ₁² on two strands.
pub fn pos_hopf() -> LinkDiagram {
    closure(2, &[1, 1]).with_name("pos_hopf")
}

/// Closure of σ₁σ₂⁻¹σ₁σ₂⁻¹, the alternating figure-eight diagram.
pub fn fig8() -> LinkDiagram {
    closure(3, &[1, -2, 1, -2]).with_name("fig8")
}

/// One-crossing unknot diagram, the closure of σ₁.
pub fn kink() -> LinkDiagram {
    closure(2, &[1]).with_name("kink")
}

/// The zero-crossing unknot.
pub fn unknot0() -> LinkDiagram {
    LinkDiagram::unlink(1).with_name("unknot0")
}

/// Closures of alternating braid words (σ₁, σ₃ positive and σ₂ negative)
/// with every generator used at least twice, up to cyclic rotation: all
/// words of length 2..=8 on two strands, 4..=6 on three and 6 on four.
pub fn alternating_closures() -> Vec<LinkDiagram> {
    let mut words: Vec<(usize, Vec<i32>)> = Vec::new();
    for (n, lengths) in [(2usize, 2..=8usize), (3, 4..=6), (4, 6..=6)] {
        let gens = n as u32 - 1;
        for len in lengths {
            for code in 0..gens.pow(len as u32) {
                let word: Vec<i32> = (0..len as u32)
                    .map(|k| {
                        let g = (code / gens.pow(k) % gens) as i32 + 1;
                        if g % 2 == 1 { g } else { -g }
                    })
                    .collect();
                let uses_each_twice = (1..=gens as i32).all(|g| word.iter().filter(|l| l.abs() == g).count() >= 2);
                let canonical = (0..len).all(|r| word <= [&word[r..], &word[..r]].concat());
                if uses_each_twice && canonical {
                    words.push((n, word));
                }
            }
        }
    }
    words
        .into_iter()
        .map(|(n, w)| {
            let name = format!("closure{w:?}").replace(' ', "");
            closure(n, &w).with_name(name)
        })
        .collect()
}
