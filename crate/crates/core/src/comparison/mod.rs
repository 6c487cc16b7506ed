//! Comparison modulo the blocking universe.

mod probe;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::enumeration::{enumerate, EnumSpec, Filter};
use crate::error::{Error, Result};
use crate::forms::{Arena, FormId};
use crate::outcomes::{outcome_geq, Outcome};
use crate::universes::UniverseTag;

pub use probe::ProbeTable;

type Opts = SmallVec<[FormId; 8]>;

/// Why `g >= h` fails at the root pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum CompareFailure {
    /// Maintenance (1): no `h^R <= g_right` and no `g_right^L >= h`.
    RightOption { g_right: FormId },
    /// Maintenance (2): no `g^L >= h_left` and no `h_left^R <= g`.
    LeftOption { h_left: FormId },
    /// Proviso (3): `h` is a Left end but `g` is not Left B-strong.
    LeftProviso,
    /// Proviso (4): `g` is a Right end but `h` is not Right B-strong.
    RightProviso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareVerdict {
    pub g: FormId,
    pub h: FormId,
    pub geq: bool,
    pub trace: Option<CompareFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinguisher {
    pub x: FormId,
    pub o_gx: Outcome,
    pub o_hx: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Empirical {
    Consistent { checked: usize },
    Refuted(Distinguisher),
}

impl Empirical {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Empirical::Refuted(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PfreeModulo {
    Witness { form: FormId },
    Unknown { searched: usize },
}

/// Offsets used to discard candidates cheaply before an exact comparison.
const PREFILTER_OFFSETS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

impl Arena {
    /// Left wins moving first on `g + x` for every Left end `x` in B.
    pub fn left_b_strong(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_left_b_strong())
    }

    pub fn right_b_strong(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_right_b_strong())
    }

    /// Decides `g >=_B h` by maintenance and proviso.
    pub fn geq_b(&mut self, g: FormId, h: FormId) -> Result<CompareVerdict> {
        self.ordinary(g)?;
        self.ordinary(h)?;
        let trace = if g == h { None } else { self.first_failure(g, h) };
        self.geq_memo.insert((g, h), trace.is_none());
        Ok(CompareVerdict {
            g,
            h,
            geq: trace.is_none(),
            trace,
        })
    }

    pub fn equiv_b(&mut self, g: FormId, h: FormId) -> Result<bool> {
        Ok(self.geq_b(g, h)?.geq && self.geq_b(h, g)?.geq)
    }

    /// `g + ~g` is equivalent to zero modulo B. Because universes have the
    /// conjugate property this decides invertibility.
    pub fn invertible_b(&mut self, g: FormId) -> Result<bool> {
        if !self.is_blocking(g)? {
            return Err(Error::NotBlocking(g));
        }
        let c = self.conjugate(g);
        let s = self.sum(g, c);
        self.equiv_b(s, FormId::ZERO)
    }

    fn geq_rec(&mut self, g: FormId, h: FormId) -> bool {
        if g == h {
            return true;
        }
        if let Some(&v) = self.geq_memo.get(&(g, h)) {
            return v;
        }
        let v = self.first_failure(g, h).is_none();
        self.geq_memo.insert((g, h), v);
        v
    }

    fn first_failure(&mut self, g: FormId, h: FormId) -> Option<CompareFailure> {
        let (fg, fh) = (self.facts(g), self.facts(h));
        if fh.is_left_end() && !fg.is_left_b_strong() {
            return Some(CompareFailure::LeftProviso);
        }
        if fg.is_right_end() && !fh.is_right_b_strong() {
            return Some(CompareFailure::RightProviso);
        }
        let g_left: Opts = self.left(g).into();
        let g_right: Opts = self.right(g).into();
        let h_left: Opts = self.left(h).into();
        let h_right: Opts = self.right(h).into();
        for &gr in &g_right {
            let answered = h_right.iter().any(|&hr| self.geq_rec(gr, hr)) || {
                let grl: Opts = self.left(gr).into();
                grl.iter().any(|&x| self.geq_rec(x, h))
            };
            if !answered {
                return Some(CompareFailure::RightOption { g_right: gr });
            }
        }
        for &hl in &h_left {
            let answered = g_left.iter().any(|&gl| self.geq_rec(gl, hl)) || {
                let hlr: Opts = self.right(hl).into();
                hlr.iter().any(|&y| self.geq_rec(g, y))
            };
            if !answered {
                return Some(CompareFailure::LeftOption { h_left: hl });
            }
        }
        None
    }

    /// Checks `o(g + x) >= o(h + x)` for every `x` in `pool`. A refutation is
    /// sound for any set containing the pool; consistency proves nothing.
    pub fn empirical_geq(&mut self, g: FormId, h: FormId, pool: &[FormId]) -> Empirical {
        for &x in pool {
            let gx = self.sum(g, x);
            let hx = self.sum(h, x);
            let (o_gx, o_hx) = (self.outcome(gx), self.outcome(hx));
            if !outcome_geq(o_gx, o_hx) {
                return Empirical::Refuted(Distinguisher { x, o_gx, o_hx });
            }
        }
        Empirical::Consistent { checked: pool.len() }
    }

    /// Searches strictly P-free blocking forms within the bounds for one
    /// equivalent to `g` modulo B. `Unknown` is not a negative answer.
    pub fn pfree_modulo_b_bounded(&mut self, g: FormId, max_birthday: u32, max_width: usize) -> Result<PfreeModulo> {
        if !self.is_blocking(g)? {
            return Err(Error::NotBlocking(g));
        }
        if self.is_strictly_p_free(g) {
            return Ok(PfreeModulo::Witness { form: g });
        }
        let spec = EnumSpec {
            max_birthday,
            max_width,
            filters: vec![Filter::PFree, Filter::Universe(UniverseTag::B)],
            ..EnumSpec::default()
        };
        let candidates = enumerate(self, &spec)?;
        let mut signature = Vec::with_capacity(PREFILTER_OFFSETS.len());
        for &k in &PREFILTER_OFFSETS {
            let s = self.add_integer(g, k)?;
            signature.push(self.outcome(s));
        }
        let mark = self.checkpoint();
        for (i, &h) in candidates.iter().enumerate() {
            if self.outcome(h) != signature[0] {
                continue;
            }
            let mut same = true;
            for (j, &k) in PREFILTER_OFFSETS.iter().enumerate().skip(1) {
                let s = self.add_integer(h, k)?;
                if self.outcome(s) != signature[j] {
                    same = false;
                    break;
                }
            }
            if same && self.equiv_b(g, h)? {
                return Ok(PfreeModulo::Witness { form: h });
            }
            if i % 4096 == 4095 {
                self.rollback(mark);
            }
        }
        Ok(PfreeModulo::Unknown {
            searched: candidates.len(),
        })
    }
}
