//! Words in the free product `V ⊛ H`, box relators, and membership in the
//! normal subgroupoid generated by the relators.
//!
//! Membership is decided through the diagonal groupoid: a loop lies in the
//! subgroupoid exactly when its image in `D(B)` is an identity.

use std::fmt;

use crate::dbl::{BoxId, DoubleGroupoid};
use crate::diagonal::DiagonalGroupoid;
use crate::error::{Error, Result};
use crate::gpd::{ArrowId, GroupoidTable, ObjectId};

/// Which side groupoid a letter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    V,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub tag: Tag,
    pub arrow: ArrowId,
}

impl Letter {
    pub fn v(arrow: ArrowId) -> Self {
        Letter { tag: Tag::V, arrow }
    }

    pub fn h(arrow: ArrowId) -> Self {
        Letter { tag: Tag::H, arrow }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::V => write!(f, "v{}", self.arrow),
            Tag::H => write!(f, "h{}", self.arrow),
        }
    }
}

/// A composable sequence of letters from `start` to `end`. The empty word
/// at `p` has `start = end = p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    start: ObjectId,
    end: ObjectId,
    letters: Vec<Letter>,
}

impl Word {
    pub fn start(&self) -> ObjectId {
        self.start
    }

    pub fn end(&self) -> ObjectId {
        self.end
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1@{}", self.start);
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The pair of side groupoids words are built from.
#[derive(Debug, Clone, Copy)]
pub struct FreeProduct<'a> {
    pub v: &'a GroupoidTable,
    pub h: &'a GroupoidTable,
}

impl<'a> FreeProduct<'a> {
    pub fn new(v: &'a GroupoidTable, h: &'a GroupoidTable) -> Self {
        FreeProduct { v, h }
    }

    pub fn of(b: &'a DoubleGroupoid) -> Self {
        FreeProduct::new(b.vertical(), b.horizontal())
    }

    fn side(&self, tag: Tag) -> &'a GroupoidTable {
        match tag {
            Tag::V => self.v,
            Tag::H => self.h,
        }
    }

    fn src(&self, l: Letter) -> ObjectId {
        self.side(l.tag).src(l.arrow)
    }

    fn end(&self, l: Letter) -> ObjectId {
        self.side(l.tag).end(l.arrow)
    }

    fn is_identity(&self, l: Letter) -> bool {
        self.side(l.tag).is_identity(l.arrow)
    }

    /// The empty word at `p`.
    pub fn empty(&self, p: ObjectId) -> Word {
        Word {
            start: p,
            end: p,
            letters: Vec::new(),
        }
    }

    /// A non-empty word; consecutive letters must compose.
    pub fn word(&self, letters: Vec<Letter>) -> Result<Word> {
        let Some(first) = letters.first() else {
            return Err(Error::WrongLength {
                what: "word",
                expected: 1,
                found: 0,
            });
        };
        for (k, l) in letters.iter().enumerate() {
            let side = self.side(l.tag);
            if !side.contains(l.arrow) {
                return Err(Error::arrow(l.arrow, side.num_arrows()));
            }
            if k > 0 && self.end(letters[k - 1]) != self.src(*l) {
                return Err(Error::WordNotComposable {
                    position: k - 1,
                    next: k,
                });
            }
        }
        Ok(Word {
            start: self.src(*first),
            end: self.end(*letters.last().expect("non-empty")),
            letters,
        })
    }

    pub fn inverse(&self, w: &Word) -> Word {
        Word {
            start: w.end,
            end: w.start,
            letters: w
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    tag: l.tag,
                    arrow: self.side(l.tag).inv(l.arrow),
                })
                .collect(),
        }
    }

    /// `u` followed by `w`.
    pub fn concat(&self, u: &Word, w: &Word) -> Result<Word> {
        if u.end != w.start {
            return Err(Error::WordNotComposable {
                position: u.len().saturating_sub(1),
                next: u.len(),
            });
        }
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&w.letters);
        Ok(Word {
            start: u.start,
            end: w.end,
            letters,
        })
    }

    /// The normal form: adjacent letters with the same tag are merged and
    /// identity letters deleted, until neither applies.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in &w.letters {
            if self.is_identity(l) {
                continue;
            }
            match stack.last() {
                Some(top) if top.tag == l.tag => {
                    let merged = Letter {
                        tag: l.tag,
                        arrow: self.side(l.tag).mul(top.arrow, l.arrow),
                    };
                    stack.pop();
                    if !self.is_identity(merged) {
                        stack.push(merged);
                    }
                }
                _ => stack.push(l),
            }
        }
        Word {
            start: w.start,
            end: w.end,
            letters: stack,
        }
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        w.letters.iter().all(|&l| !self.is_identity(l))
            && w.letters.windows(2).all(|p| p[0].tag != p[1].tag)
    }

    /// Every word reachable by one elementary step: deleting one identity
    /// letter or merging one adjacent same-tag pair.
    pub fn elementary_reductions(&self, w: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        for k in 0..w.len() {
            if self.is_identity(w.letters[k]) {
                let mut letters = w.letters.clone();
                letters.remove(k);
                out.push(Word { letters, ..*w });
            }
        }
        for k in 0..w.len().saturating_sub(1) {
            let (a, b) = (w.letters[k], w.letters[k + 1]);
            if a.tag == b.tag {
                let mut letters = w.letters.clone();
                letters[k] = Letter {
                    tag: a.tag,
                    arrow: self.side(a.tag).mul(a.arrow, b.arrow),
                };
                letters.remove(k + 1);
                out.push(Word { letters, ..*w });
            }
        }
        out
    }

    /// The loop `[A] = x·g·y⁻¹·h⁻¹` around a box with top `x`, right `g`,
    /// bottom `y` and left `h`, based at its top-left vertex. Not reduced.
    pub fn raw_relator(&self, b: &DoubleGroupoid, a: BoxId) -> Word {
        let letters = vec![
            Letter::h(b.top(a)),
            Letter::v(b.right(a)),
            Letter::h(self.h.inv(b.bottom(a))),
            Letter::v(self.v.inv(b.left(a))),
        ];
        Word {
            start: b.tl(a),
            end: b.tl(a),
            letters,
        }
    }
}

/// The reduced form of a word.
pub fn reduce_word(fp: &FreeProduct<'_>, w: &Word) -> Word {
    fp.reduce(w)
}

/// The reduced relator of a box.
pub fn box_relator(b: &DoubleGroupoid, a: BoxId) -> Word {
    let fp = FreeProduct::of(b);
    fp.reduce(&fp.raw_relator(b, a))
}

/// The image of a word in `D(B)`: `V`-letters through `j`, `H`-letters
/// through `i`.
pub fn image(d: &DiagonalGroupoid<'_>, w: &Word) -> ArrowId {
    let t = d.table();
    w.letters.iter().fold(t.ident(w.start), |acc, l| {
        let next = match l.tag {
            Tag::V => d.j(l.arrow),
            Tag::H => d.i(l.arrow),
        };
        t.mul(acc, next)
    })
}

/// Whether a loop lies in the normal subgroupoid generated by the box
/// relators.
pub fn in_j(d: &DiagonalGroupoid<'_>, w: &Word) -> Result<bool> {
    if !w.is_loop() {
        return Err(Error::NotALoop {
            start: w.start.0,
            end: w.end.0,
        });
    }
    Ok(d.table().is_identity(image(d, w)))
}
