//! Category-dictionary scoring (LIWC-style word categories) and
//! moral-foundation scoring.
//!
//! A category dictionary uses the tab-separated `.dic` layout:
//!
//! ```text
//! %
//! 1    posemo
//! 2    negemo
//! %
//! happy    1
//! win*    1
//! sad    2
//! ```
//!
//! A pattern ending in `*` matches any token with that prefix; any other
//! pattern matches by equality. Tokens come from
//! [`tokenize_raw`](crate::textprep::tokenize_raw), and proportions are
//! divided by the raw token count of the text.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::tokenize_raw;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryLexicon {
    categories: Vec<String>,
    exact: HashMap<String, Vec<usize>>,
    prefixes: HashMap<String, Vec<usize>>,
}

impl CategoryLexicon {
    /// An empty lexicon over the given category names.
    pub fn new<I, S>(categories: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let categories: Vec<String> = categories.into_iter().map(Into::into).collect();
        for (i, c) in categories.iter().enumerate() {
            if categories[..i].contains(c) {
                return Err(Error::invalid(format!("duplicate category `{c}`")));
            }
        }
        Ok(CategoryLexicon {
            categories,
            exact: HashMap::new(),
            prefixes: HashMap::new(),
        })
    }

    /// Adds `pattern` to `category`. A trailing `*` makes it a prefix pattern.
    pub fn add_pattern(&mut self, pattern: &str, category: &str) -> Result<()> {
        let idx = self
            .category_index(category)
            .ok_or_else(|| Error::invalid(format!("unknown category `{category}`")))?;
        self.insert(pattern, idx)
    }

    fn insert(&mut self, pattern: &str, idx: usize) -> Result<()> {
        let pattern = pattern.to_lowercase();
        let (map, key) = match pattern.strip_suffix('*') {
            Some(stem) => (&mut self.prefixes, stem),
            None => (&mut self.exact, pattern.as_str()),
        };
        if key.is_empty() || key.contains('*') {
            return Err(Error::invalid(format!("invalid pattern `{pattern}`")));
        }
        let cats = map.entry(key.to_string()).or_default();
        if !cats.contains(&idx) {
            cats.push(idx);
            cats.sort_unstable();
        }
        Ok(())
    }

    /// Parses the `.dic` layout described in the module docs.
    pub fn parse_dic(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let mut header_open = false;
        for (no, line) in lines.by_ref() {
            if line.trim().is_empty() {
                continue;
            }
            if line.trim() == "%" {
                header_open = true;
                break;
            }
            return Err(Error::line(no, "expected opening `%`"));
        }
        if !header_open {
            return Err(Error::invalid("empty dictionary"));
        }

        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut closed = false;
        for (no, line) in lines.by_ref() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "%" {
                closed = true;
                break;
            }
            let mut parts = line.split_whitespace();
            let (Some(id), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::line(no, "expected `<id> <category>`"));
            };
            if names.iter().any(|n| n == name) {
                return Err(Error::line(no, format!("duplicate category `{name}`")));
            }
            if ids.insert(id.to_string(), names.len()).is_some() {
                return Err(Error::line(no, format!("duplicate category id `{id}`")));
            }
            names.push(name.to_string());
        }
        if !closed {
            return Err(Error::invalid("category header is not closed by `%`"));
        }

        let mut lex = CategoryLexicon::new(names)?;
        for (no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields: Vec<&str> = if line.contains('\t') {
                line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect()
            } else {
                line.split_whitespace().collect()
            };
            if fields.len() < 2 {
                return Err(Error::line(no, "pattern without categories"));
            }
            let pattern = fields.remove(0);
            if pattern.trim_end_matches('*').contains('*') || pattern.starts_with('*') {
                return Err(Error::line(
                    no,
                    format!("wildcard must be a single trailing `*` in `{pattern}`"),
                ));
            }
            for id in fields {
                let idx = *ids
                    .get(id)
                    .ok_or_else(|| Error::line(no, format!("unknown category id `{id}`")))?;
                lex.insert(pattern, idx).map_err(|e| Error::line(no, e.to_string()))?;
            }
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        CategoryLexicon::parse_dic(&text)
    }

    /// The bundled open stand-in dictionary.
    pub fn standin() -> Self {
        CategoryLexicon::parse_dic(crate::resources::STANDIN_LIWC_DIC).expect("bundled lexicon is valid")
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn category_index(&self, name: &str) -> Option<usize> {
        self.categories.iter().position(|c| c == name)
    }

    pub fn pattern_count(&self) -> usize {
        self.exact.len() + self.prefixes.len()
    }

    /// Category indices hit by one token, ascending and deduplicated.
    pub fn token_categories(&self, token: &str) -> Vec<usize> {
        let mut hits: Vec<usize> = self.exact.get(token).cloned().unwrap_or_default();
        for (end, _) in token.char_indices().skip(1).chain(std::iter::once((token.len(), ' '))) {
            if let Some(cats) = self.prefixes.get(&token[..end]) {
                hits.extend_from_slice(cats);
            }
        }
        hits.sort_unstable();
        hits.dedup();
        hits
    }

    /// Per-category share of tokens of `text` that hit the category.
    pub fn proportions(&self, text: &str) -> CategoryProportions {
        let tokens = tokenize_raw(text);
        let mut counts = vec![0usize; self.categories.len()];
        for tok in &tokens {
            for c in self.token_categories(tok) {
                counts[c] += 1;
            }
        }
        let n = tokens.len();
        let values = counts
            .iter()
            .map(|&c| if n == 0 { 0.0 } else { c as f64 / n as f64 })
            .collect();
        CategoryProportions {
            categories: self.categories.clone(),
            values,
            token_count: n,
        }
    }
}

/// Proportions for every category of a lexicon, in lexicon order.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryProportions {
    categories: Vec<String>,
    values: Vec<f64>,
    pub token_count: usize,
}

impl CategoryProportions {
    pub fn get(&self, category: &str) -> Option<f64> {
        self.categories
            .iter()
            .position(|c| c == category)
            .map(|i| self.values[i])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn as_map(&self) -> BTreeMap<&str, f64> {
        self.categories
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
            .collect()
    }
}

pub fn category_proportions(text: &str, lex: &CategoryLexicon) -> CategoryProportions {
    lex.proportions(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Foundation {
    Care,
    Fairness,
    Loyalty,
    Authority,
    Purity,
}

impl Foundation {
    pub const ALL: [Foundation; 5] = [
        Foundation::Care,
        Foundation::Fairness,
        Foundation::Loyalty,
        Foundation::Authority,
        Foundation::Purity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Foundation::Care => "care",
            Foundation::Fairness => "fairness",
            Foundation::Loyalty => "loyalty",
            Foundation::Authority => "authority",
            Foundation::Purity => "purity",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Foundation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Foundation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Foundation::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid(format!("unknown moral foundation `{s}`")))
    }
}

/// Neutral score on the 1-9 moral scale.
pub const NEUTRAL_MORAL_SCORE: f64 = 5.0;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MoralLexicon {
    entries: HashMap<String, (Foundation, f64)>,
}

impl MoralLexicon {
    pub fn insert(&mut self, word: &str, foundation: Foundation, score: f64) -> Result<()> {
        if !(1.0..=9.0).contains(&score) {
            return Err(Error::invalid(format!(
                "moral score {score} for `{word}` outside [1, 9]"
            )));
        }
        self.entries.insert(word.trim().to_lowercase(), (foundation, score));
        Ok(())
    }

    /// Parses the `word,foundation,score` CSV. A repeated word is an error.
    pub fn parse_csv(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            word: String,
            foundation: String,
            score: f64,
        }
        let mut lex = MoralLexicon::default();
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        for (i, row) in rdr.deserialize::<Row>().enumerate() {
            let line = i + 2;
            let row = row?;
            let word = row.word.to_lowercase();
            if lex.entries.contains_key(&word) {
                return Err(Error::line(line, format!("duplicate word `{word}`")));
            }
            let foundation = row
                .foundation
                .parse()
                .map_err(|e: Error| Error::line(line, e.to_string()))?;
            lex.insert(&word, foundation, row.score)
                .map_err(|e| Error::line(line, e.to_string()))?;
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        MoralLexicon::parse_csv(&text)
    }

    pub fn standin() -> Self {
        MoralLexicon::parse_csv(crate::resources::STANDIN_MORAL_CSV).expect("bundled moral lexicon is valid")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mean matched score per foundation; unmatched foundations are neutral.
    pub fn score(&self, text: &str) -> MoralProfile {
        let mut sums = [0.0f64; 5];
        let mut counts = [0usize; 5];
        for tok in tokenize_raw(text) {
            if let Some(&(f, s)) = self.entries.get(&tok) {
                sums[f.index()] += s;
                counts[f.index()] += 1;
            }
        }
        let mut scores = [NEUTRAL_MORAL_SCORE; 5];
        for i in 0..5 {
            if counts[i] > 0 {
                scores[i] = sums[i] / counts[i] as f64;
            }
        }
        MoralProfile { scores }
    }
}

/// Scores for the five foundations, in [`Foundation::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoralProfile {
    pub scores: [f64; 5],
}

impl MoralProfile {
    pub fn get(&self, foundation: Foundation) -> f64 {
        self.scores[foundation.index()]
    }
}

pub fn moral_scores(text: &str, mlex: &MoralLexicon) -> MoralProfile {
    mlex.score(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SMALL: &str = "%\n1\tposemo\n2\tnegemo\n%\nhappy\t1\nwin*\t1\nsad\t2\n";

    #[test]
    fn parses_small_dic() {
        let lex = CategoryLexicon::parse_dic(SMALL).unwrap();
        assert_eq!(lex.categories(), ["posemo", "negemo"]);
        assert_eq!(lex.pattern_count(), 3);
        assert_eq!(lex.token_categories("winning"), [0]);
        assert_eq!(lex.token_categories("win"), [0]);
        assert!(lex.token_categories("wi").is_empty());
    }

    #[test]
    fn dic_errors_carry_line_numbers() {
        let bad_id = "%\n1\tposemo\n%\nhappy\t1\nodd\t99\n";
        match CategoryLexicon::parse_dic(bad_id) {
            Err(Error::Line { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let bad_star = "%\n1\tposemo\n%\nha*ppy\t1\n";
        match CategoryLexicon::parse_dic(bad_star) {
            Err(Error::Line { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(CategoryLexicon::parse_dic("%\n1 a\n").is_err());
    }

    #[test]
    fn proportions_examples() {
        let lex = CategoryLexicon::parse_dic(SMALL).unwrap();
        let p = lex.proportions("happy happy sad");
        assert_eq!(p.get("posemo"), Some(2.0 / 3.0));
        assert_eq!(p.get("negemo"), Some(1.0 / 3.0));
        assert_eq!(p.token_count, 3);

        let p = lex.proportions("hello world");
        assert_eq!(p.values(), [0.0, 0.0]);

        let mut wildcard = CategoryLexicon::new(["posemo"]).unwrap();
        wildcard.add_pattern("win*", "posemo").unwrap();
        assert_eq!(wildcard.proportions("winning wins").get("posemo"), Some(1.0));

        let empty = lex.proportions("");
        assert_eq!((empty.token_count, empty.values()), (0, &[0.0, 0.0][..]));
    }

    #[test]
    fn token_hits_overlapping_categories_once_each() {
        let mut lex = CategoryLexicon::new(["posemo", "affect"]).unwrap();
        lex.add_pattern("love*", "posemo").unwrap();
        lex.add_pattern("lov*", "posemo").unwrap();
        lex.add_pattern("love", "affect").unwrap();
        let p = lex.proportions("love");
        assert_eq!(p.values(), [1.0, 1.0]);
    }

    #[test]
    fn standin_lexicon_loads() {
        let lex = CategoryLexicon::standin();
        assert!(lex.pattern_count() >= 200);
        assert!(lex.category_index("posemo").is_some() && lex.category_index("negemo").is_some());
    }

    #[test]
    fn moral_examples() {
        let mut m = MoralLexicon::default();
        m.insert("help", Foundation::Care, 7.0).unwrap();
        let p = m.score("help me");
        assert_eq!(p.get(Foundation::Care), 7.0);
        for f in &Foundation::ALL[1..] {
            assert_eq!(p.get(*f), 5.0);
        }
        assert_eq!(m.score("").scores, [5.0; 5]);
        m.insert("harm", Foundation::Care, 2.0).unwrap();
        assert_eq!(m.score("help harm").get(Foundation::Care), 4.5);
        assert!(m.insert("bad", Foundation::Care, 9.5).is_err());
    }

    #[test]
    fn moral_csv() {
        let m = MoralLexicon::parse_csv("word,foundation,score\nHelp,care,7\nlaw,Authority,6.5\n").unwrap();
        assert_eq!(m.len(), 2);
        assert!(MoralLexicon::parse_csv("word,foundation,score\nx,valor,5\n").is_err());
        assert!(MoralLexicon::parse_csv("word,foundation,score\nx,care,0.5\n").is_err());
        assert!(MoralLexicon::parse_csv("word,foundation,score\nx,care,5\nx,purity,5\n").is_err());
        assert!(MoralLexicon::standin().len() >= 50);
    }

    proptest! {
        #[test]
        fn proportions_bounded(words in proptest::collection::vec("[a-z]{1,6}", 0..20)) {
            let lex = CategoryLexicon::standin();
            let p = lex.proportions(&words.join(" "));
            for v in p.values() {
                prop_assert!((0.0..=1.0).contains(v));
            }
        }

        #[test]
        fn adding_pattern_is_monotone(words in proptest::collection::vec("[a-d]{1,3}", 1..15), pattern in "[a-d]{1,2}\\*?") {
            let mut lex = CategoryLexicon::new(["x"]).unwrap();
            lex.add_pattern("ab", "x").unwrap();
            let text = words.join(" ");
            let before = lex.proportions(&text).values()[0];
            lex.add_pattern(&pattern, "x").unwrap();
            prop_assert!(lex.proportions(&text).values()[0] >= before);
        }

        #[test]
        fn moral_profile_in_range(words in proptest::collection::vec("[a-z]{2,8}", 0..20)) {
            let m = MoralLexicon::standin();
            let p = m.score(&words.join(" harm care law "));
            for s in p.scores {
                prop_assert!((1.0..=9.0).contains(&s));
            }
        }
    }
}
