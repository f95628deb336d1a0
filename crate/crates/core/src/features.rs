//! Feature families for the win/lose tweet classifier: bag of words,
//! TF-IDF, averaged word embeddings, lexicon proportions and moral scores.
//!
//! Vocabularies and IDF weights are fitted on training documents only and
//! then applied unchanged to any other documents.
//!
//! TF-IDF uses raw counts for term frequency and the smoothed
//! `idf(t) = ln((1 + N) / (1 + df(t))) + 1`, with no row normalization.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lexicon::{CategoryLexicon, Foundation, MoralLexicon};
use crate::textprep::{preprocess, StopwordSet};

/// Default vocabulary cap for BoW and TF-IDF.
pub const DEFAULT_VOCAB_CAP: usize = 5000;
/// Default embedding dimension (GloVe Twitter 200d).
pub const DEFAULT_EMBEDDING_DIM: usize = 200;

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<f64>),
    /// Per row: strictly increasing column ids with nonzero values.
    Sparse(Vec<Vec<(u32, f64)>>),
}

/// Row-per-sample numeric matrix with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n_rows: usize,
    n_cols: usize,
    column_names: Vec<String>,
    storage: Storage,
}

/// Borrowed view of one matrix row.
#[derive(Debug, Clone, Copy)]
pub enum Row<'a> {
    Dense(&'a [f64]),
    Sparse(&'a [(u32, f64)]),
}

impl<'a> Row<'a> {
    /// Nonzero `(column, value)` entries in column order.
    pub fn entries(self) -> Box<dyn Iterator<Item = (usize, f64)> + 'a> {
        match self {
            Row::Dense(v) => Box::new(v.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(j, x)| (j, *x))),
            Row::Sparse(e) => Box::new(e.iter().map(|&(j, x)| (j as usize, x))),
        }
    }

    pub fn get(self, col: usize) -> f64 {
        match self {
            Row::Dense(v) => v[col],
            Row::Sparse(e) => e.binary_search_by_key(&(col as u32), |p| p.0).map_or(0.0, |i| e[i].1),
        }
    }

    pub fn dot(self, other: Row<'_>) -> f64 {
        match (self, other) {
            (Row::Dense(a), Row::Dense(b)) => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            (Row::Sparse(a), Row::Sparse(b)) => {
                let (mut i, mut j, mut acc) = (0, 0, 0.0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            acc += a[i].1 * b[j].1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
                acc
            }
            (Row::Sparse(s), Row::Dense(d)) | (Row::Dense(d), Row::Sparse(s)) => {
                s.iter().map(|&(j, x)| x * d[j as usize]).sum()
            }
        }
    }

    /// Dot product with a dense weight vector.
    pub fn dot_dense(self, w: &[f64]) -> f64 {
        self.dot(Row::Dense(w))
    }

    pub fn squared_norm(self) -> f64 {
        match self {
            Row::Dense(v) => v.iter().map(|x| x * x).sum(),
            Row::Sparse(e) => e.iter().map(|p| p.1 * p.1).sum(),
        }
    }

    pub fn to_dense(self, n_cols: usize) -> Vec<f64> {
        match self {
            Row::Dense(v) => v.to_vec(),
            Row::Sparse(e) => {
                let mut out = vec![0.0; n_cols];
                for &(j, x) in e {
                    out[j as usize] = x;
                }
                out
            }
        }
    }
}

impl FeatureMatrix {
    /// Row-major dense matrix.
    pub fn dense(n_rows: usize, column_names: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n_cols = column_names.len();
        if values.len() != n_rows * n_cols {
            return Err(Error::invalid(format!(
                "dense matrix needs {} values, got {}",
                n_rows * n_cols,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("feature matrix contains a non-finite value"));
        }
        Ok(FeatureMatrix {
            n_rows,
            n_cols,
            column_names,
            storage: Storage::Dense(values),
        })
    }

    pub fn from_dense_rows(column_names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = column_names.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::invalid(format!(
                "row {bad} has {} values, expected {n_cols}",
                rows[bad].len()
            )));
        }
        FeatureMatrix::dense(n_rows, column_names, rows.concat())
    }

    /// Sparse rows of `(column, value)` pairs in any order; zeros are dropped
    /// and repeated columns summed.
    pub fn sparse(column_names: Vec<String>, rows: Vec<Vec<(u32, f64)>>) -> Result<Self> {
        let n_cols = column_names.len();
        let mut clean = Vec::with_capacity(rows.len());
        for mut row in rows {
            row.sort_by_key(|p| p.0);
            let mut merged: Vec<(u32, f64)> = Vec::with_capacity(row.len());
            for (j, v) in row {
                if j as usize >= n_cols {
                    return Err(Error::invalid(format!("column {j} out of range ({n_cols} columns)")));
                }
                if !v.is_finite() {
                    return Err(Error::invalid("feature matrix contains a non-finite value"));
                }
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|p| p.1 != 0.0);
            clean.push(merged);
        }
        Ok(FeatureMatrix {
            n_rows: clean.len(),
            n_cols,
            column_names,
            storage: Storage::Sparse(clean),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn row(&self, i: usize) -> Row<'_> {
        match &self.storage {
            Storage::Dense(v) => Row::Dense(&v[i * self.n_cols..(i + 1) * self.n_cols]),
            Storage::Sparse(rows) => Row::Sparse(&rows[i]),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).get(j)
    }

    pub fn all_finite(&self) -> bool {
        match &self.storage {
            Storage::Dense(v) => v.iter().all(|x| x.is_finite()),
            Storage::Sparse(rows) => rows.iter().flatten().all(|p| p.1.is_finite()),
        }
    }

    /// Rows in the given order (repeats allowed).
    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        let storage = match &self.storage {
            Storage::Dense(_) => {
                let mut v = Vec::with_capacity(indices.len() * self.n_cols);
                for &i in indices {
                    if let Row::Dense(r) = self.row(i) {
                        v.extend_from_slice(r);
                    }
                }
                Storage::Dense(v)
            }
            Storage::Sparse(rows) => Storage::Sparse(indices.iter().map(|&i| rows[i].clone()).collect()),
        };
        FeatureMatrix {
            n_rows: indices.len(),
            n_cols: self.n_cols,
            column_names: self.column_names.clone(),
            storage,
        }
    }

    /// Writes a dense CSV with a header of column names.
    pub fn write_dense_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(&self.column_names)?;
        for i in 0..self.n_rows {
            wtr.write_record(self.row(i).to_dense(self.n_cols).iter().map(|v| v.to_string()))?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Writes the nonzero cells as `row,col,value`.
    pub fn write_sparse_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["row", "col", "value"])?;
        for i in 0..self.n_rows {
            for (j, v) in self.row(i).entries() {
                wtr.write_record([i.to_string(), j.to_string(), v.to_string()])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Horizontal concatenation. The result is sparse when any input is sparse.
pub fn concat_features(matrices: &[FeatureMatrix]) -> Result<FeatureMatrix> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::invalid("nothing to concatenate"))?;
    if matrices.len() == 1 {
        return Ok(first.clone());
    }
    let n_rows = first.n_rows;
    for m in matrices {
        if m.n_rows != n_rows {
            return Err(Error::RowMismatch {
                expected: n_rows,
                found: m.n_rows,
            });
        }
    }
    let names: Vec<String> = matrices.iter().flat_map(|m| m.column_names.iter().cloned()).collect();
    if matrices.iter().any(FeatureMatrix::is_sparse) {
        let rows = (0..n_rows)
            .map(|i| {
                let mut offset = 0u32;
                let mut row = Vec::new();
                for m in matrices {
                    row.extend(m.row(i).entries().map(|(j, v)| (offset + j as u32, v)));
                    offset += m.n_cols as u32;
                }
                row
            })
            .collect();
        FeatureMatrix::sparse(names, rows)
    } else {
        let mut values = Vec::with_capacity(n_rows * names.len());
        for i in 0..n_rows {
            for m in matrices {
                if let Row::Dense(r) = m.row(i) {
                    values.extend_from_slice(r);
                }
            }
        }
        FeatureMatrix::dense(n_rows, names, values)
    }
}

/// Ordered term list with a reverse index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_terms(terms: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vocabulary term `{t}`")));
            }
        }
        Ok(Vocabulary { terms, index })
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn column(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }
}

fn select_top(scores: HashMap<&str, f64>, cap: usize) -> Vec<String> {
    let mut ranked: Vec<(&str, f64)> = scores.into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(cap);
    ranked.into_iter().map(|(t, _)| t.to_string()).collect()
}

/// Top `cap` terms by total occurrence count, ties lexicographic.
pub fn fit_bow_vocab(docs: &[Vec<String>], cap: usize) -> Result<Vocabulary> {
    if docs.is_empty() {
        return Err(Error::NoData("no training documents".into()));
    }
    let mut counts: HashMap<&str, f64> = HashMap::new();
    for tok in docs.iter().flatten() {
        *counts.entry(tok.as_str()).or_default() += 1.0;
    }
    if counts.is_empty() {
        return Err(Error::NoData("training documents contain no terms".into()));
    }
    Vocabulary::from_terms(select_top(counts, cap))
}

fn count_rows(docs: &[Vec<String>], vocab: &Vocabulary, weight: impl Fn(usize) -> f64 + Sync) -> Vec<Vec<(u32, f64)>> {
    docs.par_iter()
        .map(|doc| {
            let mut counts: HashMap<usize, f64> = HashMap::new();
            for tok in doc {
                if let Some(j) = vocab.column(tok) {
                    *counts.entry(j).or_default() += 1.0;
                }
            }
            let mut row: Vec<(u32, f64)> = counts.into_iter().map(|(j, c)| (j as u32, c * weight(j))).collect();
            row.sort_by_key(|p| p.0);
            row
        })
        .collect()
}

fn prefixed(prefix: &str, names: impl IntoIterator<Item = impl fmt::Display>) -> Vec<String> {
    names.into_iter().map(|n| format!("{prefix}:{n}")).collect()
}

/// Term counts over `vocab`; out-of-vocabulary tokens are ignored.
pub fn bow_transform(docs: &[Vec<String>], vocab: &Vocabulary) -> FeatureMatrix {
    FeatureMatrix::sparse(prefixed("bow", vocab.terms()), count_rows(docs, vocab, |_| 1.0))
        .expect("counts are finite and in range")
}

#[derive(Debug, Clone, PartialEq)]
pub struct TfidfModel {
    pub vocab: Vocabulary,
    /// Aligned with `vocab` terms.
    pub idf: Vec<f64>,
    pub n_train_docs: usize,
}

pub fn smoothed_idf(n_docs: usize, doc_freq: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + doc_freq as f64)).ln() + 1.0
}

/// Fits IDF on `docs` and keeps the `cap` terms with the largest TF-IDF
/// weight attained in any training document (ties lexicographic).
pub fn fit_tfidf(docs: &[Vec<String>], cap: usize) -> Result<TfidfModel> {
    if docs.is_empty() {
        return Err(Error::NoData("no training documents".into()));
    }
    let mut df: HashMap<&str, usize> = HashMap::new();
    let mut max_tf: HashMap<&str, usize> = HashMap::new();
    for doc in docs {
        let mut tf: HashMap<&str, usize> = HashMap::new();
        for tok in doc {
            *tf.entry(tok.as_str()).or_default() += 1;
        }
        for (t, c) in tf {
            *df.entry(t).or_default() += 1;
            let m = max_tf.entry(t).or_default();
            *m = (*m).max(c);
        }
    }
    if df.is_empty() {
        return Err(Error::NoData("training documents contain no terms".into()));
    }
    let n = docs.len();
    let best: HashMap<&str, f64> = max_tf
        .iter()
        .map(|(t, &c)| (*t, c as f64 * smoothed_idf(n, df[t])))
        .collect();
    let vocab = Vocabulary::from_terms(select_top(best, cap))?;
    let idf = vocab.terms().iter().map(|t| smoothed_idf(n, df[t.as_str()])).collect();
    Ok(TfidfModel {
        vocab,
        idf,
        n_train_docs: n,
    })
}

pub fn tfidf_transform(docs: &[Vec<String>], model: &TfidfModel) -> FeatureMatrix {
    FeatureMatrix::sparse(
        prefixed("tfidf", model.vocab.terms()),
        count_rows(docs, &model.vocab, |j| model.idf[j]),
    )
    .expect("weights are finite and in range")
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct LoadedEmbeddings {
    pub table: EmbeddingTable,
    pub warnings: Vec<String>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("embedding dimension must be positive"));
        }
        Ok(EmbeddingTable {
            dim,
            vectors: HashMap::new(),
        })
    }

    /// Inserts or replaces a vector; returns true when it replaced one.
    pub fn insert(&mut self, word: &str, vector: Vec<f64>) -> Result<bool> {
        if vector.len() != self.dim {
            return Err(Error::invalid(format!(
                "vector for `{word}` has {} values, expected {}",
                vector.len(),
                self.dim
            )));
        }
        Ok(self.vectors.insert(word.to_string(), vector).is_some())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    /// Parses `word v1 ... v_dim` lines. A repeated word keeps the last
    /// vector and produces a warning.
    pub fn parse<R: BufRead>(reader: R, dim: usize) -> Result<LoadedEmbeddings> {
        let mut table = EmbeddingTable::new(dim)?;
        let mut warnings = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let no = i + 1;
            let mut fields = line.split_whitespace();
            let Some(word) = fields.next() else { continue };
            let values = fields
                .map(|f| f.parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| Error::line(no, "non-numeric or non-finite vector component"))?;
            if values.len() != dim {
                return Err(Error::line(
                    no,
                    format!("expected {dim} values, found {}", values.len()),
                ));
            }
            if table.insert(word, values)? {
                warnings.push(format!("line {no}: duplicate word `{word}`, keeping the later vector"));
            }
        }
        Ok(LoadedEmbeddings { table, warnings })
    }
}

pub fn load_embeddings(path: impl AsRef<Path>, dim: usize) -> Result<LoadedEmbeddings> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    EmbeddingTable::parse(BufReader::new(file), dim)
}

/// Mean vector of in-table tokens, or zeros when none is in the table.
pub fn embed_average(tokens: &[String], table: &EmbeddingTable) -> Vec<f64> {
    let mut acc = vec![0.0; table.dim];
    let mut n = 0usize;
    for tok in tokens {
        if let Some(v) = table.get(tok) {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
            n += 1;
        }
    }
    if n > 0 {
        for a in &mut acc {
            *a /= n as f64;
        }
    }
    acc
}

pub fn embedding_features(docs: &[Vec<String>], table: &EmbeddingTable) -> FeatureMatrix {
    let rows: Vec<Vec<f64>> = docs.par_iter().map(|d| embed_average(d, table)).collect();
    FeatureMatrix::from_dense_rows(prefixed("w2v", 0..table.dim), rows).expect("fixed-width rows")
}

/// Category proportions over every lexicon category, in lexicon order.
pub fn linguistic_features(texts: &[String], lex: &CategoryLexicon) -> FeatureMatrix {
    let rows: Vec<Vec<f64>> = texts.par_iter().map(|t| lex.proportions(t).values().to_vec()).collect();
    FeatureMatrix::from_dense_rows(prefixed("ling", lex.categories()), rows).expect("fixed-width rows")
}

/// Five moral-foundation scores per text.
pub fn moral_features(texts: &[String], mlex: &MoralLexicon) -> FeatureMatrix {
    let rows: Vec<Vec<f64>> = texts.par_iter().map(|t| mlex.score(t).scores.to_vec()).collect();
    FeatureMatrix::from_dense_rows(prefixed("moral", Foundation::ALL.iter().map(|f| f.as_str())), rows)
        .expect("fixed-width rows")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureFamily {
    Bow,
    Tfidf,
    Word2Vec,
    Linguistic,
    Moral,
}

impl FeatureFamily {
    pub const ALL: [FeatureFamily; 5] = [
        FeatureFamily::Bow,
        FeatureFamily::Tfidf,
        FeatureFamily::Word2Vec,
        FeatureFamily::Linguistic,
        FeatureFamily::Moral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureFamily::Bow => "bow",
            FeatureFamily::Tfidf => "tfidf",
            FeatureFamily::Word2Vec => "word2vec",
            FeatureFamily::Linguistic => "linguistic",
            FeatureFamily::Moral => "moral",
        }
    }
}

impl FromStr for FeatureFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::invalid(format!("unknown feature family `{s}`")))
    }
}

/// One family or a `+`-joined combination such as `bow+linguistic`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeatureSet(pub Vec<FeatureFamily>);

impl FeatureSet {
    /// The five single families followed by the four combinations.
    pub fn standard() -> Vec<FeatureSet> {
        use FeatureFamily::*;
        vec![
            FeatureSet(vec![Bow]),
            FeatureSet(vec![Tfidf]),
            FeatureSet(vec![Word2Vec]),
            FeatureSet(vec![Linguistic]),
            FeatureSet(vec![Moral]),
            FeatureSet(vec![Bow, Linguistic]),
            FeatureSet(vec![Bow, Moral]),
            FeatureSet(vec![Linguistic, Moral]),
            FeatureSet(vec![Bow, Linguistic, Moral]),
        ]
    }

    pub fn families(&self) -> &[FeatureFamily] {
        &self.0
    }

    pub fn needs(&self, family: FeatureFamily) -> bool {
        self.0.contains(&family)
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|x| x.as_str()).collect();
        f.write_str(&names.join("+"))
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let families = s.split('+').map(str::parse).collect::<Result<Vec<FeatureFamily>>>()?;
        if families.is_empty() {
            return Err(Error::invalid("empty feature set"));
        }
        Ok(FeatureSet(families))
    }
}

/// A tweet prepared for classification.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub tweet_id: String,
    pub text: String,
    /// Preprocessed tokens.
    pub tokens: Vec<String>,
    /// 1 = tweet by a winning candidate.
    pub label: u8,
}

impl LabeledSample {
    pub fn new(tweet_id: &str, text: &str, label: bool, stopwords: &StopwordSet) -> Self {
        LabeledSample {
            tweet_id: tweet_id.to_string(),
            text: text.to_string(),
            tokens: preprocess(text, stopwords),
            label: u8::from(label),
        }
    }
}

/// Lexicons and vectors needed by the non-count families.
#[derive(Debug, Clone)]
pub struct FeatureResources {
    pub lexicon: CategoryLexicon,
    pub moral: MoralLexicon,
    pub embeddings: Option<EmbeddingTable>,
    pub vocab_cap: usize,
}

impl Default for FeatureResources {
    fn default() -> Self {
        FeatureResources {
            lexicon: CategoryLexicon::standin(),
            moral: MoralLexicon::standin(),
            embeddings: None,
            vocab_cap: DEFAULT_VOCAB_CAP,
        }
    }
}

/// A feature set whose count vocabularies were fitted on training samples.
#[derive(Debug, Clone)]
pub struct FittedFeatures<'r> {
    set: FeatureSet,
    resources: &'r FeatureResources,
    bow: Option<Vocabulary>,
    tfidf: Option<TfidfModel>,
}

impl<'r> FittedFeatures<'r> {
    pub fn fit(set: &FeatureSet, train: &[&LabeledSample], resources: &'r FeatureResources) -> Result<Self> {
        if set.needs(FeatureFamily::Word2Vec) && resources.embeddings.is_none() {
            return Err(Error::invalid(
                "word2vec features requested but no embeddings were loaded",
            ));
        }
        let docs: Vec<Vec<String>> = train.iter().map(|s| s.tokens.clone()).collect();
        let bow = if set.needs(FeatureFamily::Bow) {
            Some(fit_bow_vocab(&docs, resources.vocab_cap)?)
        } else {
            None
        };
        let tfidf = if set.needs(FeatureFamily::Tfidf) {
            Some(fit_tfidf(&docs, resources.vocab_cap)?)
        } else {
            None
        };
        Ok(FittedFeatures {
            set: set.clone(),
            resources,
            bow,
            tfidf,
        })
    }

    pub fn transform(&self, samples: &[&LabeledSample]) -> Result<FeatureMatrix> {
        let docs: Vec<Vec<String>> = samples.iter().map(|s| s.tokens.clone()).collect();
        let texts: Vec<String> = samples.iter().map(|s| s.text.clone()).collect();
        let mut parts = Vec::with_capacity(self.set.0.len());
        for family in &self.set.0 {
            parts.push(match family {
                FeatureFamily::Bow => bow_transform(&docs, self.bow.as_ref().expect("fitted")),
                FeatureFamily::Tfidf => tfidf_transform(&docs, self.tfidf.as_ref().expect("fitted")),
                FeatureFamily::Word2Vec => {
                    embedding_features(&docs, self.resources.embeddings.as_ref().expect("checked at fit"))
                }
                FeatureFamily::Linguistic => linguistic_features(&texts, &self.resources.lexicon),
                FeatureFamily::Moral => moral_features(&texts, &self.resources.moral),
            });
        }
        concat_features(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn docs(texts: &[&str]) -> Vec<Vec<String>> {
        texts
            .iter()
            .map(|t| t.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn bow_vocab_examples() {
        let v = fit_bow_vocab(&docs(&["a a b", "b c"]), 2).unwrap();
        assert_eq!(v.terms(), ["a", "b"]);
        let v = fit_bow_vocab(&docs(&["a a b", "b c"]), 10).unwrap();
        assert_eq!(v.terms(), ["a", "b", "c"]);
        let v = fit_bow_vocab(&docs(&["c b a"]), 2).unwrap();
        assert_eq!(v.terms(), ["a", "b"]);
        assert!(fit_bow_vocab(&docs(&["", ""]), 2).is_err());
        assert!(fit_bow_vocab(&[], 2).is_err());
    }

    #[test]
    fn bow_transform_examples() {
        let v = Vocabulary::from_terms(vec!["a".into(), "b".into()]).unwrap();
        let m = bow_transform(&docs(&["a a b", "z z", ""]), &v);
        assert_eq!(m.row(0).to_dense(2), [2.0, 1.0]);
        assert_eq!(m.row(1).to_dense(2), [0.0, 0.0]);
        assert_eq!(m.row(2).to_dense(2), [0.0, 0.0]);
        assert_eq!(m.column_names(), ["bow:a", "bow:b"]);
    }

    #[test]
    fn tfidf_examples() {
        let model = fit_tfidf(&docs(&["a b", "a c"]), 10).unwrap();
        let idf = |t: &str| model.idf[model.vocab.column(t).unwrap()];
        assert_eq!(idf("a"), 1.0);
        assert!((idf("b") - ((3.0f64 / 2.0).ln() + 1.0)).abs() < 1e-15);
        assert!((idf("b") - 1.4055).abs() < 1e-4);
        let m = tfidf_transform(&docs(&["a d"]), &model);
        assert_eq!(m.n_cols(), 3);
        assert_eq!(m.row(0).entries().count(), 1);

        let single = fit_tfidf(&docs(&["a a"]), 10).unwrap();
        assert_eq!(tfidf_transform(&docs(&["a a"]), &single).get(0, 0), 2.0);
    }

    #[test]
    fn tfidf_selects_by_max_weight() {
        // c appears once in one doc (weight 1*ln(4/2)+1), a appears in all 3 docs (weight 1)
        let model = fit_tfidf(&docs(&["a c", "a", "a"]), 1).unwrap();
        assert_eq!(model.vocab.terms(), ["c"]);
    }

    #[test]
    fn embeddings_parse_and_average() {
        let text = "w1 1 0\nw2 0 1\nw1 1 0\n";
        let loaded = EmbeddingTable::parse(text.as_bytes(), 2).unwrap();
        assert_eq!(loaded.table.len(), 2);
        assert_eq!(loaded.warnings.len(), 1);
        let t = &loaded.table;
        let toks = |s: &str| s.split(' ').map(str::to_string).collect::<Vec<_>>();
        assert_eq!(embed_average(&toks("w1 w2"), t), [0.5, 0.5]);
        assert_eq!(embed_average(&toks("zz yy"), t), [0.0, 0.0]);
        assert_eq!(embed_average(&toks("w2 zz"), t), [0.0, 1.0]);

        match EmbeddingTable::parse("a 1 2\nb 1\n".as_bytes(), 2) {
            Err(Error::Line { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let line200 = format!("w {}\n", vec!["0.5"; 200].join(" "));
        let line199 = format!("v {}\n", vec!["0.5"; 199].join(" "));
        let three = format!(
            "{line200}{}{}",
            line200.replacen('w', "x", 1),
            line200.replacen('w', "y", 1)
        );
        assert_eq!(EmbeddingTable::parse(three.as_bytes(), 200).unwrap().table.len(), 3);
        assert!(EmbeddingTable::parse(line199.as_bytes(), 200).is_err());
    }

    #[test]
    fn lexicon_families() {
        let lex = CategoryLexicon::parse_dic("%\n1 posemo\n2 negemo\n%\nhappy 1\nsad 2\n").unwrap();
        let m = linguistic_features(&["happy sad".into(), "".into()], &lex);
        assert_eq!(m.n_cols(), 2);
        assert_eq!(m.row(1).to_dense(2), [0.0, 0.0]);
        let moral = moral_features(&["".into()], &MoralLexicon::standin());
        assert_eq!(moral.n_cols(), 5);
        assert_eq!(moral.row(0).to_dense(5), [5.0; 5]);
    }

    #[test]
    fn concat_rules() {
        let a = FeatureMatrix::from_dense_rows(vec!["x".into()], vec![vec![1.0], vec![2.0]]).unwrap();
        let b = FeatureMatrix::sparse(vec!["y".into(), "z".into()], vec![vec![(1, 3.0)], vec![]]).unwrap();
        let c = concat_features(&[b.clone(), a.clone()]).unwrap();
        assert_eq!((c.n_rows(), c.n_cols()), (2, 3));
        assert_eq!(c.row(0).to_dense(3), [0.0, 3.0, 1.0]);
        assert_eq!(c.column_names(), ["y", "z", "x"]);
        assert_eq!(concat_features(std::slice::from_ref(&a)).unwrap(), a);
        let short = FeatureMatrix::from_dense_rows(vec!["x".into()], vec![vec![1.0]]).unwrap();
        assert!(matches!(concat_features(&[a, short]), Err(Error::RowMismatch { .. })));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(FeatureMatrix::from_dense_rows(vec!["x".into()], vec![vec![f64::NAN]]).is_err());
        assert!(FeatureMatrix::sparse(vec!["x".into()], vec![vec![(0, f64::INFINITY)]]).is_err());
        assert!(FeatureMatrix::sparse(vec!["x".into()], vec![vec![(3, 1.0)]]).is_err());
    }

    #[test]
    fn feature_set_names() {
        let s: FeatureSet = "bow+linguistic".parse().unwrap();
        assert_eq!(s.to_string(), "bow+linguistic");
        assert_eq!(FeatureSet::standard().len(), 9);
        assert!("bow+nope".parse::<FeatureSet>().is_err());
    }

    #[test]
    fn csv_exports() {
        let m = FeatureMatrix::sparse(vec!["a".into(), "b".into()], vec![vec![(1, 2.5)], vec![(0, 1.0)]]).unwrap();
        let mut dense = Vec::new();
        m.write_dense_csv(&mut dense).unwrap();
        assert_eq!(String::from_utf8(dense).unwrap(), "a,b\n0,2.5\n1,0\n");
        let mut sparse = Vec::new();
        m.write_sparse_csv(&mut sparse).unwrap();
        assert_eq!(String::from_utf8(sparse).unwrap(), "row,col,value\n0,1,2.5\n1,0,1\n");
    }

    proptest! {
        #[test]
        fn refit_reproduces_counts(texts in proptest::collection::vec("[a-e]( [a-e]){0,8}", 1..12)) {
            let docs: Vec<Vec<String>> = texts.iter().map(|t| t.split(' ').map(str::to_string).collect()).collect();
            let vocab = fit_bow_vocab(&docs, 100).unwrap();
            let m = bow_transform(&docs, &vocab);
            for (i, d) in docs.iter().enumerate() {
                for (j, term) in vocab.terms().iter().enumerate() {
                    let expected = d.iter().filter(|t| *t == term).count() as f64;
                    prop_assert_eq!(m.get(i, j), expected);
                }
            }
        }

        #[test]
        fn embedding_average_permutation_invariant(mut toks in proptest::collection::vec("[a-d]", 0..10), seed in any::<u64>()) {
            let mut table = EmbeddingTable::new(3).unwrap();
            for (i, w) in ["a", "b", "c"].iter().enumerate() {
                table.insert(w, vec![i as f64, 1.0 / (i as f64 + 1.0), -(i as f64)]).unwrap();
            }
            let before = embed_average(&toks, &table);
            let k = toks.len().max(1);
            toks.rotate_left((seed as usize) % k);
            toks.reverse();
            let after = embed_average(&toks, &table);
            for (x, y) in before.iter().zip(&after) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
