//! Error type shared by all operations.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong when building objects or running a
/// computation. Validation failures concern malformed inputs; the remaining
/// variants report mathematical preconditions that the input does not meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// No symbol survives iterated removal of stranded symbols.
    EmptyAfterEssentialization,
    /// An edge or label refers to a symbol that was never declared.
    UnknownSymbol(String),
    /// The same symbol name was declared twice.
    DuplicateSymbol(String),
    /// A word contains a letter outside the image alphabet.
    UnknownLabel(String),
    /// A block map misses a word it must be defined on.
    BlockMapIncomplete(String),
    /// The domain graph is not strongly connected.
    NotIrreducible,
    /// The code admits a diamond, so no finite degree exists.
    InfiniteToOne,
    /// The word is not in the language of the image shift.
    WordNotInImage,
    /// The coordinate is not strictly inside the word.
    CoordinateNotInterior,
    /// Labels of the first code are not symbols of the second domain.
    CodomainMismatch(String),
    /// The image language of the first code leaves the second domain.
    LanguageNotContained,
    /// The image language is a proper sublanguage of the second domain and
    /// strict composition was requested.
    ImageStrictlySmaller,
    /// The word is not magic: its best coordinate does not reach the minimum.
    NotMagic,
    /// The certificate's depth is not the class degree.
    NotMinimal,
    /// The certificate is not a transition block (directly, or through every
    /// one-symbol interior embedding for boundary coordinates).
    NotTransitionBlock,
    /// No preimage of the bridged word survives.
    BridgeNotInImage,
    /// The pairing induced by a repeated block is not a bijection.
    NonPermutation,
    /// Periodic contexts force contradictory merges, or too few contexts
    /// exist to reach the expected number of parts.
    InconsistentContexts,
    /// The restricted graph does not have the same image as the full one.
    ImageNotEqual,
    /// The symbol subset does not induce a proper nonempty subshift.
    NotProperSubshift,
    /// The forbidden word already occurs in the restricted subshift.
    WordInSubshift,
    /// The forbidden word does not occur in the domain at all.
    WordNotInDomain,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyAfterEssentialization => {
                write!(f, "graph is empty after removing stranded symbols")
            }
            Error::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            Error::DuplicateSymbol(s) => write!(f, "symbol {s:?} declared twice"),
            Error::UnknownLabel(s) => write!(f, "unknown label {s:?}"),
            Error::BlockMapIncomplete(w) => write!(f, "block map undefined on {w:?}"),
            Error::NotIrreducible => write!(f, "graph is not irreducible"),
            Error::InfiniteToOne => write!(f, "code is infinite-to-one (a diamond exists)"),
            Error::WordNotInImage => write!(f, "word is not in the image language"),
            Error::CoordinateNotInterior => write!(f, "coordinate is not interior to the word"),
            Error::CodomainMismatch(l) => {
                write!(f, "label {l:?} is not a symbol of the second domain")
            }
            Error::LanguageNotContained => {
                write!(f, "image language is not contained in the second domain")
            }
            Error::ImageStrictlySmaller => {
                write!(f, "image language is strictly smaller than the second domain")
            }
            Error::NotMagic => write!(f, "word does not attain the minimal fiber cardinality"),
            Error::NotMinimal => write!(f, "certificate depth is not the class degree"),
            Error::NotTransitionBlock => write!(f, "certificate is not a transition block"),
            Error::BridgeNotInImage => write!(f, "bridged word is not in the image language"),
            Error::NonPermutation => write!(f, "block pairing is not a permutation"),
            Error::InconsistentContexts => {
                write!(f, "periodic contexts give an inconsistent partition")
            }
            Error::ImageNotEqual => write!(f, "restricted graph has a different image"),
            Error::NotProperSubshift => write!(f, "symbol subset is not a proper subshift"),
            Error::WordInSubshift => write!(f, "word occurs in the restricted subshift"),
            Error::WordNotInDomain => write!(f, "word does not occur in the domain"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for errors reporting an unmet mathematical precondition rather
    /// than a malformed input. The CLI maps the two kinds to different exit
    /// codes.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::EmptyAfterEssentialization
                | Error::UnknownSymbol(_)
                | Error::DuplicateSymbol(_)
                | Error::UnknownLabel(_)
                | Error::BlockMapIncomplete(_)
        )
    }
}
