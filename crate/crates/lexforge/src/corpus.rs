//! Canonical document record and streaming corpus I/O.
//!
//! Corpora are JSONL files (UTF-8, one object per line) with required
//! keys `id`, `source`, `text` and an optional `meta` string map.
//! A `.gz` extension on either end selects gzip transparently. Readers
//! and writers stream one document at a time, so memory stays flat in
//! corpus size; file order is authoritative (the dedup stage's
//! keep-first policy is defined by it).

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::script::ScriptClass;

/// One corpus record. Immutable value type; safe to move across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub source: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl Document {
    pub fn new(id: impl Into<String>, source: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            source: source.into(),
            text: text.into(),
            meta: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("empty id".to_string());
        }
        if self.text.contains('\u{0}') {
            return Err("text contains NUL byte".to_string());
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to open {path}: {source}")]
    Open {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("i/o error at line {line}: {source}")]
    Read {
        line: usize,
        #[source]
        source: io::Error,
    },
    #[error("i/o failure after writing {written} documents: {source}")]
    Write {
        written: u64,
        #[source]
        source: io::Error,
    },
}

fn is_gz(path: &Path) -> bool {
    path.extension().map(|e| e == "gz").unwrap_or(false)
}

/// Streaming JSONL reader. Yields documents in file order.
pub struct CorpusReader {
    lines: Box<dyn BufRead + Send>,
    line_no: usize,
    buf: String,
}

impl CorpusReader {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| CorpusError::Open {
            path: path.to_path_buf(),
            source,
        })?;
        let reader: Box<dyn BufRead + Send> = if is_gz(path) {
            Box::new(BufReader::new(MultiGzDecoder::new(file)))
        } else {
            Box::new(BufReader::new(file))
        };
        Ok(CorpusReader {
            lines: reader,
            line_no: 0,
            buf: String::new(),
        })
    }
}

impl Iterator for CorpusReader {
    type Item = Result<Document, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            self.line_no += 1;
            match self.lines.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(source) => {
                    return Some(Err(CorpusError::Read {
                        line: self.line_no,
                        source,
                    }))
                }
            }
            let line = self.buf.trim_end_matches('\n');
            if line.is_empty() {
                continue; // tolerate blank lines (trailing newline etc.)
            }
            let doc: Document = match serde_json::from_str(line) {
                Ok(d) => d,
                Err(e) => {
                    return Some(Err(CorpusError::Malformed {
                        line: self.line_no,
                        msg: e.to_string(),
                    }))
                }
            };
            if let Err(msg) = doc.validate() {
                return Some(Err(CorpusError::Malformed {
                    line: self.line_no,
                    msg,
                }));
            }
            return Some(Ok(doc));
        }
    }
}

/// Open a corpus file for streaming reads.
pub fn read_corpus(path: impl AsRef<Path>) -> Result<CorpusReader, CorpusError> {
    CorpusReader::open(path)
}

/// Incremental JSONL writer; `finish` flushes and returns the count.
pub struct CorpusWriter {
    out: Box<dyn Write + Send>,
    written: u64,
}

impl CorpusWriter {
    pub fn create(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|source| CorpusError::Open {
            path: path.to_path_buf(),
            source,
        })?;
        let out: Box<dyn Write + Send> = if is_gz(path) {
            Box::new(BufWriter::new(GzEncoder::new(
                file,
                flate2::Compression::default(),
            )))
        } else {
            Box::new(BufWriter::new(file))
        };
        Ok(CorpusWriter { out, written: 0 })
    }

    pub fn write(&mut self, doc: &Document) -> Result<(), CorpusError> {
        let mut line = serde_json::to_string(doc).expect("document serialization cannot fail");
        line.push('\n');
        self.out
            .write_all(line.as_bytes())
            .map_err(|source| CorpusError::Write {
                written: self.written,
                source,
            })?;
        self.written += 1;
        Ok(())
    }

    pub fn finish(mut self) -> Result<u64, CorpusError> {
        self.out.flush().map_err(|source| CorpusError::Write {
            written: self.written,
            source,
        })?;
        Ok(self.written)
    }
}

/// Write a document stream to `path`, returning the number written.
/// A read of the written file reproduces the documents bit-exactly.
pub fn write_corpus<I>(docs: I, path: impl AsRef<Path>) -> Result<u64, CorpusError>
where
    I: IntoIterator,
    I::Item: Borrow<Document>,
{
    let mut w = CorpusWriter::create(path)?;
    for doc in docs {
        w.write(doc.borrow())?;
    }
    w.finish()
}

/// Aggregate counts over a corpus stream.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub doc_count: u64,
    /// Whitespace-delimited words: maximal runs of non-whitespace.
    pub word_count: u64,
    pub char_histogram: BTreeMap<ScriptClass, u64>,
}

impl CorpusStats {
    pub fn add(&mut self, doc: &Document) {
        self.doc_count += 1;
        self.word_count += doc.text.split_whitespace().count() as u64;
        for c in doc.text.chars() {
            *self.char_histogram.entry(ScriptClass::of(c)).or_insert(0) += 1;
        }
    }

    pub fn total_chars(&self) -> u64 {
        self.char_histogram.values().sum()
    }
}

/// Single-pass statistics over a document stream.
pub fn corpus_stats<I>(docs: I) -> CorpusStats
where
    I: IntoIterator,
    I::Item: Borrow<Document>,
{
    let mut stats = CorpusStats::default();
    for doc in docs {
        stats.add(doc.borrow());
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn tmpfile(name: &str) -> PathBuf {
        let dir = tempfile::tempdir().unwrap().keep();
        dir.join(name)
    }

    #[test]
    fn reads_valid_lines_in_order() {
        let path = tmpfile("c.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"id":"a","source":"internet","text":"one"}}"#).unwrap();
        writeln!(f, r#"{{"id":"b","source":"news","text":"two"}}"#).unwrap();
        writeln!(f, r#"{{"id":"c","source":"social","text":"three"}}"#).unwrap();
        let docs: Vec<Document> = read_corpus(&path).unwrap().map(|d| d.unwrap()).collect();
        assert_eq!(docs.len(), 3);
        assert_eq!(docs[0].id, "a");
        assert_eq!(docs[2].text, "three");
    }

    #[test]
    fn empty_file_is_empty_stream() {
        let path = tmpfile("empty.jsonl");
        File::create(&path).unwrap();
        assert_eq!(read_corpus(&path).unwrap().count(), 0);
    }

    #[test]
    fn missing_text_field_errors_with_line_number() {
        let path = tmpfile("bad.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"id":"a","source":"internet","text":"ok"}}"#).unwrap();
        writeln!(f, r#"{{"id":"b","source":"internet"}}"#).unwrap();
        let mut it = read_corpus(&path).unwrap();
        assert!(it.next().unwrap().is_ok());
        match it.next().unwrap() {
            Err(CorpusError::Malformed { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("text"), "unexpected message: {msg}");
            }
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn missing_id_errors() {
        let path = tmpfile("noid.jsonl");
        let mut f = File::create(&path).unwrap();
        writeln!(f, r#"{{"id":"","source":"internet","text":"x"}}"#).unwrap();
        let mut it = read_corpus(&path).unwrap();
        assert!(matches!(
            it.next().unwrap(),
            Err(CorpusError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let path = tmpfile("rt.jsonl");
        let mut docs = Vec::new();
        for i in 0..100 {
            let mut d = Document::new(
                format!("d{i}"),
                "other",
                format!("טקסט מספר {i}\nwith a newline\tand tab"),
            );
            if i % 3 == 0 {
                d.meta.insert("lang".into(), "he".into());
            }
            docs.push(d);
        }
        let n = write_corpus(&docs, &path).unwrap();
        assert_eq!(n, 100);
        let back: Vec<Document> = read_corpus(&path).unwrap().map(|d| d.unwrap()).collect();
        assert_eq!(docs, back);
        // writing the read-back stream reproduces the bytes exactly
        let path2 = tmpfile("rt2.jsonl");
        write_corpus(&back, &path2).unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&path2).unwrap()
        );
    }

    #[test]
    fn gzip_round_trip() {
        let path = tmpfile("c.jsonl.gz");
        let docs = vec![Document::new("a", "internet", "שלום עולם")];
        write_corpus(&docs, &path).unwrap();
        let back: Vec<Document> = read_corpus(&path).unwrap().map(|d| d.unwrap()).collect();
        assert_eq!(docs, back);
    }

    #[test]
    fn zero_docs_round_trip() {
        let path = tmpfile("zero.jsonl");
        let n = write_corpus(std::iter::empty::<Document>(), &path).unwrap();
        assert_eq!(n, 0);
        assert_eq!(read_corpus(&path).unwrap().count(), 0);
    }

    #[test]
    fn stats_counts_hebrew_words() {
        let stats = corpus_stats([Document::new("a", "news", "שלום עולם")]);
        assert_eq!(stats.doc_count, 1);
        assert_eq!(stats.word_count, 2);
        assert_eq!(stats.char_histogram[&ScriptClass::Hebrew], 8);
        assert_eq!(stats.char_histogram[&ScriptClass::Common], 1);
        assert_eq!(stats.total_chars(), 9);
    }

    #[test]
    fn stats_empty_corpus_all_zero() {
        let stats = corpus_stats(std::iter::empty::<Document>());
        assert_eq!(stats, CorpusStats::default());
    }
}
