//! Text preparation: raw book text to a clean lemma stream.
//!
//! The pipeline runs in a fixed order: tokenize, drop stopwords, lemmatize.
//! Stopwords are therefore matched against surface forms, not lemmas; a
//! stopword list written at lemma level has to list the inflected forms too.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{LexnetError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub language: String,
    pub text: String,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, language: impl Into<String>, text: impl Into<String>) -> Self {
        RawDocument {
            id: id.into(),
            language: language.into(),
            text: text.into(),
        }
    }

    pub fn from_file(id: impl Into<String>, language: impl Into<String>, path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| LexnetError::io(path, e))?;
        Ok(RawDocument::new(id, language, text))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    pub language: String,
    words: HashSet<String>,
}

impl StopwordList {
    /// Builds a list from arbitrary words; entries are normalized the same way
    /// the tokenizer normalizes text, and blank entries are skipped.
    pub fn new<I, S>(language: impl Into<String>, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .map(|w| normalize_entry(w.as_ref()))
            .filter(|w| !w.is_empty())
            .collect();
        StopwordList {
            language: language.into(),
            words,
        }
    }

    /// One word per line, `#` starts a comment line.
    pub fn parse(language: impl Into<String>, source: &str, path: &Path) -> Result<Self> {
        let mut words = HashSet::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.chars().any(char::is_whitespace) {
                return Err(LexnetError::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: format!("stopword `{line}` contains whitespace"),
                });
            }
            words.insert(normalize_entry(line));
        }
        Ok(StopwordList {
            language: language.into(),
            words,
        })
    }

    pub fn load(language: impl Into<String>, path: &Path) -> Result<Self> {
        let source = fs::read_to_string(path).map_err(|e| LexnetError::io(path, e))?;
        Self::parse(language, &source, path)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaMap {
    pub language: String,
    entries: HashMap<String, String>,
}

impl LemmaMap {
    pub fn new<I, S, T>(language: impl Into<String>, entries: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let entries = entries
            .into_iter()
            .map(|(s, l)| (normalize_entry(s.as_ref()), normalize_entry(l.as_ref())))
            .filter(|(s, l)| !s.is_empty() && !l.is_empty())
            .collect();
        LemmaMap {
            language: language.into(),
            entries,
        }
    }

    pub fn empty(language: impl Into<String>) -> Self {
        LemmaMap {
            language: language.into(),
            entries: HashMap::new(),
        }
    }

    /// `surface<TAB>lemma` per line, `#` starts a comment line.
    pub fn parse(language: impl Into<String>, source: &str, path: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        for (idx, line) in source.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let bad = |message: String| LexnetError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let mut fields = trimmed.split('\t');
            let (Some(surface), Some(lemma), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad("expected `surface<TAB>lemma`".into()));
            };
            let surface = normalize_entry(surface.trim());
            let lemma = normalize_entry(lemma.trim());
            if surface.is_empty() || lemma.is_empty() {
                return Err(bad("empty surface form or lemma".into()));
            }
            if surface.chars().chain(lemma.chars()).any(char::is_whitespace) {
                return Err(bad("entries may not contain whitespace".into()));
            }
            entries.insert(surface, lemma);
        }
        Ok(LemmaMap {
            language: language.into(),
            entries,
        })
    }

    pub fn load(language: impl Into<String>, path: &Path) -> Result<Self> {
        let source = fs::read_to_string(path).map_err(|e| LexnetError::io(path, e))?;
        Self::parse(language, &source, path)
    }

    /// Absent keys pass through unchanged.
    pub fn lookup<'a>(&'a self, token: &'a str) -> &'a str {
        self.entries.get(token).map(String::as_str).unwrap_or(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Word counts for one document, with and without stopwords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCounts {
    pub with_stopwords: usize,
    pub without_stopwords: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenStream {
    pub doc_id: String,
    pub lemmas: Vec<String>,
    pub count_with_stopwords: usize,
    pub count_without_stopwords: usize,
}

#[derive(Serialize, Deserialize)]
struct CountsSidecar {
    doc_id: String,
    count_with_stopwords: usize,
    count_without_stopwords: usize,
}

impl TokenStream {
    pub fn counts(&self) -> WordCounts {
        WordCounts {
            with_stopwords: self.count_with_stopwords,
            without_stopwords: self.count_without_stopwords,
        }
    }

    /// Writes `<stem>.lemmas.txt` (one lemma per line) and `<stem>.counts.json`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| LexnetError::io(dir, e))?;
        let lemmas_path = dir.join(format!("{stem}.lemmas.txt"));
        let mut body = self.lemmas.join("\n");
        if !body.is_empty() {
            body.push('\n');
        }
        fs::write(&lemmas_path, body).map_err(|e| LexnetError::io(&lemmas_path, e))?;

        let sidecar = CountsSidecar {
            doc_id: self.doc_id.clone(),
            count_with_stopwords: self.count_with_stopwords,
            count_without_stopwords: self.count_without_stopwords,
        };
        let counts_path = dir.join(format!("{stem}.counts.json"));
        let json = serde_json::to_string_pretty(&sidecar)?;
        fs::write(&counts_path, json + "\n").map_err(|e| LexnetError::io(&counts_path, e))?;
        Ok(())
    }

    /// Reads a one-lemma-per-line file. A `.counts.json` sidecar next to it is
    /// used when present; otherwise both counts are the lemma count.
    pub fn read(lemmas_path: &Path) -> Result<Self> {
        let body = fs::read_to_string(lemmas_path).map_err(|e| LexnetError::io(lemmas_path, e))?;
        let lemmas: Vec<String> = body
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_owned)
            .collect();

        let file_name = lemmas_path.file_name().and_then(|f| f.to_str()).unwrap_or_default();
        let stem = file_name
            .strip_suffix(".lemmas.txt")
            .or_else(|| file_name.rsplit_once('.').map(|(s, _)| s))
            .unwrap_or(file_name)
            .to_owned();
        let sidecar_path = lemmas_path.with_file_name(format!("{stem}.counts.json"));

        let (doc_id, with_stop) = match fs::read_to_string(&sidecar_path) {
            Ok(json) => {
                let sidecar: CountsSidecar = serde_json::from_str(&json)?;
                if sidecar.count_without_stopwords != lemmas.len() {
                    return Err(LexnetError::Parse {
                        path: sidecar_path,
                        line: 1,
                        message: format!(
                            "sidecar says {} lemmas, stream has {}",
                            sidecar.count_without_stopwords,
                            lemmas.len()
                        ),
                    });
                }
                (sidecar.doc_id, sidecar.count_with_stopwords)
            }
            Err(_) => (stem, lemmas.len()),
        };
        Ok(TokenStream {
            doc_id,
            count_without_stopwords: lemmas.len(),
            count_with_stopwords: with_stop,
            lemmas,
        })
    }
}

fn normalize_entry(word: &str) -> String {
    word.trim().nfc().collect::<String>().to_lowercase().nfc().collect()
}

/// Splits text into lowercase letter runs.
///
/// Text is NFC-normalized and lowercased first. Any non-letter character ends
/// a token. A run of letters and digits that contains a digit ("B5", "1964")
/// is dropped whole.
pub fn tokenize(text: &str) -> Vec<String> {
    let normalized: String = text.nfc().collect::<String>().to_lowercase().nfc().collect();

    let mut tokens = Vec::new();
    for chunk in normalized.split(|c: char| !c.is_alphanumeric()) {
        if chunk.is_empty() || chunk.chars().any(|c| !c.is_alphabetic()) {
            continue;
        }
        tokens.push(chunk.to_owned());
    }
    tokens
}

pub fn remove_stopwords(tokens: &[String], stopwords: &StopwordList) -> Vec<String> {
    tokens.iter().filter(|t| !stopwords.contains(t)).cloned().collect()
}

pub fn lemmatize(tokens: &[String], lemmas: &LemmaMap) -> Vec<String> {
    tokens.iter().map(|t| lemmas.lookup(t).to_owned()).collect()
}

pub fn preprocess(doc: &RawDocument, stopwords: &StopwordList, lemmas: &LemmaMap) -> Result<TokenStream> {
    for (resource, language) in [("stopword list", &stopwords.language), ("lemma map", &lemmas.language)] {
        if !language.eq_ignore_ascii_case(&doc.language) {
            return Err(LexnetError::LanguageMismatch {
                document: doc.language.clone(),
                resource,
                resource_language: language.clone(),
            });
        }
    }

    let tokens = tokenize(&doc.text);
    let content = remove_stopwords(&tokens, stopwords);
    let lemmas = lemmatize(&content, lemmas);
    Ok(TokenStream {
        doc_id: doc.id.clone(),
        count_with_stopwords: tokens.len(),
        count_without_stopwords: lemmas.len(),
        lemmas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn tokenize_case_and_punctuation() {
        assert_eq!(tokenize("The cat, the CAT."), toks(&["the", "cat", "the", "cat"]));
        assert_eq!(tokenize(""), Vec::<String>::new());
    }

    #[test]
    fn tokenize_italian_elision() {
        assert_eq!(tokenize("l'arte dell'uomo"), toks(&["l", "arte", "dell", "uomo"]));
    }

    #[test]
    fn tokenize_keeps_diacritics_and_composes() {
        assert_eq!(tokenize("Mačka ŽIVI"), toks(&["mačka", "živi"]));
        // decomposed c + combining caron
        assert_eq!(tokenize("mac\u{30C}ka"), toks(&["mačka"]));
        assert_eq!(tokenize("città è"), toks(&["città", "è"]));
    }

    #[test]
    fn tokenize_drops_numbers_and_hyphens_split() {
        assert_eq!(
            tokenize("page 12, book B5 well-known"),
            toks(&["page", "book", "well", "known"])
        );
    }

    #[test]
    fn stopwords_removed() {
        let stop = StopwordList::new("en", ["the"]);
        assert_eq!(
            remove_stopwords(&toks(&["the", "cat", "sat"]), &stop),
            toks(&["cat", "sat"])
        );
        assert!(remove_stopwords(&toks(&["the", "the"]), &stop).is_empty());
    }

    #[test]
    fn lemmatize_lookup_and_passthrough() {
        let map = LemmaMap::new("en", [("cats", "cat"), ("sat", "sit")]);
        assert_eq!(lemmatize(&toks(&["cats", "sat"]), &map), toks(&["cat", "sit"]));
        assert_eq!(lemmatize(&toks(&["qwzx"]), &LemmaMap::empty("en")), toks(&["qwzx"]));
        let hr = LemmaMap::new("hr", [("mačke", "mačka")]);
        assert_eq!(lemmatize(&toks(&["mačke"]), &hr), toks(&["mačka"]));
    }

    #[test]
    fn preprocess_counts() {
        let doc = RawDocument::new("d", "en", "the cats sat");
        let stop = StopwordList::new("en", ["the"]);
        let map = LemmaMap::new("en", [("cats", "cat"), ("sat", "sit")]);
        let ts = preprocess(&doc, &stop, &map).unwrap();
        assert_eq!(ts.lemmas, toks(&["cat", "sit"]));
        assert_eq!((ts.count_with_stopwords, ts.count_without_stopwords), (3, 2));

        let empty = preprocess(&RawDocument::new("e", "en", ""), &stop, &map).unwrap();
        assert!(empty.lemmas.is_empty());
        assert_eq!((empty.count_with_stopwords, empty.count_without_stopwords), (0, 0));
    }

    #[test]
    fn preprocess_language_mismatch() {
        let doc = RawDocument::new("d", "en", "x");
        let err = preprocess(&doc, &StopwordList::new("hr", ["i"]), &LemmaMap::empty("en")).unwrap_err();
        assert!(matches!(err, LexnetError::LanguageMismatch { .. }));
        let err = preprocess(&doc, &StopwordList::new("en", ["i"]), &LemmaMap::empty("it")).unwrap_err();
        assert!(matches!(err, LexnetError::LanguageMismatch { .. }));
    }

    #[test]
    fn parse_resource_files() {
        let p = Path::new("mem");
        let stop = StopwordList::parse("en", "# comment\nthe\nA\n\n", p).unwrap();
        assert!(stop.contains("the") && stop.contains("a"));
        assert_eq!(stop.len(), 2);
        assert!(StopwordList::parse("en", "two words\n", p).is_err());

        let map = LemmaMap::parse("en", "# c\ncats\tcat\nWent\tgo\n", p).unwrap();
        assert_eq!(map.lookup("went"), "go");
        assert!(LemmaMap::parse("en", "cats cat\n", p).is_err());
        assert!(LemmaMap::parse("en", "a\tb\tc\n", p).is_err());
    }

    #[test]
    fn stream_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let ts = TokenStream {
            doc_id: "B1-EN".into(),
            lemmas: toks(&["cat", "sit"]),
            count_with_stopwords: 5,
            count_without_stopwords: 2,
        };
        ts.write(dir.path(), "B1-EN").unwrap();
        let back = TokenStream::read(&dir.path().join("B1-EN.lemmas.txt")).unwrap();
        assert_eq!(back, ts);
    }

    proptest! {
        #[test]
        fn counts_and_retokenize(text in "[a-zA-Zčćžšđàèéìòù0-9 ,.'\\-!?\n]{0,200}",
                                 stops in proptest::collection::vec("[a-z]{1,3}", 0..8)) {
            let stop = StopwordList::new("xx", &stops);
            let doc = RawDocument::new("d", "xx", text.clone());
            let ts = preprocess(&doc, &stop, &LemmaMap::empty("xx")).unwrap();
            prop_assert!(ts.count_without_stopwords <= ts.count_with_stopwords);
            prop_assert_eq!(ts.count_without_stopwords, ts.lemmas.len());

            let tokens = tokenize(&text);
            prop_assert!(tokens.iter().all(|t| !t.is_empty() && t.chars().all(char::is_alphabetic)));
            prop_assert_eq!(tokenize(&tokens.join(" ")), tokens.clone());

            let once = remove_stopwords(&tokens, &stop);
            prop_assert_eq!(remove_stopwords(&once, &stop), once);
            prop_assert_eq!(lemmatize(&tokens, &LemmaMap::empty("xx")), tokens.clone());
            prop_assert_eq!(preprocess(&doc, &stop, &LemmaMap::empty("xx")).unwrap(), ts);
        }

        #[test]
        fn retokenize_arbitrary_unicode(text in "\\PC{0,80}") {
            let tokens = tokenize(&text);
            prop_assert!(tokens.iter().all(|t| t.chars().all(char::is_alphabetic)));
            prop_assert_eq!(tokenize(&tokens.join(" ")), tokens);
        }
    }
}
