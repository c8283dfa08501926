//! Script classification shared by the cleaning, filtering, and
//! statistics stages.

use serde::{Deserialize, Serialize};
use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};
use unicode_script::{Script, UnicodeScript};

/// Coarse script class of a character. `Common` covers digits,
/// punctuation, whitespace, and symbols shared across scripts
/// (inherited combining marks are folded in as well).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptClass {
    Hebrew,
    Latin,
    Cyrillic,
    Greek,
    Arabic,
    Cjk,
    Common,
    Other,
}

impl ScriptClass {
    pub fn of(c: char) -> ScriptClass {
        match c.script() {
            Script::Hebrew => ScriptClass::Hebrew,
            Script::Latin => ScriptClass::Latin,
            Script::Cyrillic => ScriptClass::Cyrillic,
            Script::Greek => ScriptClass::Greek,
            Script::Arabic => ScriptClass::Arabic,
            Script::Han | Script::Hiragana | Script::Katakana | Script::Hangul => ScriptClass::Cjk,
            Script::Common | Script::Inherited => ScriptClass::Common,
            _ => ScriptClass::Other,
        }
    }
}

/// True for general-category letters only; digits and combining marks
/// (including alphabetic vowel points) do not count as letters
/// anywhere in the pipeline.
pub fn is_letter(c: char) -> bool {
    c.general_category_group() == GeneralCategoryGroup::Letter
}

/// Letters in the Hebrew script (final forms included, points excluded).
pub fn is_hebrew_letter(c: char) -> bool {
    is_letter(c) && ScriptClass::of(c) == ScriptClass::Hebrew
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_common_scripts() {
        assert_eq!(ScriptClass::of('ש'), ScriptClass::Hebrew);
        assert_eq!(ScriptClass::of('ם'), ScriptClass::Hebrew); // final mem
        assert_eq!(ScriptClass::of('a'), ScriptClass::Latin);
        assert_eq!(ScriptClass::of('П'), ScriptClass::Cyrillic);
        assert_eq!(ScriptClass::of('γ'), ScriptClass::Greek);
        assert_eq!(ScriptClass::of('ب'), ScriptClass::Arabic);
        assert_eq!(ScriptClass::of('中'), ScriptClass::Cjk);
        assert_eq!(ScriptClass::of('3'), ScriptClass::Common);
        assert_eq!(ScriptClass::of('!'), ScriptClass::Common);
        assert_eq!(ScriptClass::of(' '), ScriptClass::Common);
    }

    #[test]
    fn hebrew_letter_excludes_points() {
        assert!(is_hebrew_letter('א'));
        assert!(is_hebrew_letter('ץ'));
        // qamats is a combining point, not a letter
        assert!(!is_hebrew_letter('\u{05B8}'));
        assert!(!is_hebrew_letter('a'));
    }
}
