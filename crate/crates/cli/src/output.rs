use std::fmt::Display;
use std::io::{self, BufWriter, Write};

use binpart::{Move, Sign};
use num_bigint::BigUint;
use serde_json::{json, Map, Number, Value};

use crate::Format;

/// Writes one record per line, either as plain text or as a JSON object.
pub struct Sink<W: Write> {
    inner: BufWriter<W>,
    format: Format,
}

impl<W: Write> Sink<W> {
    pub fn new(inner: W, format: Format) -> Self {
        Self {
            inner: BufWriter::new(inner),
            format,
        }
    }

    /// Emits `text` in text mode or `json` in jsonl mode.
    pub fn record(&mut self, text: impl Display, json: Value) -> io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.inner, "{text}"),
            Format::Jsonl => writeln!(self.inner, "{json}"),
        }
    }

    pub fn partition(&mut self, index: Option<&BigUint>, partition: &str) -> io::Result<()> {
        let mut obj = Map::new();
        if let Some(k) = index {
            obj.insert("index".into(), big_number(k));
        }
        obj.insert("partition".into(), partition.into());
        self.record(partition, Value::Object(obj))
    }

    /// `index partition epsilon rule action level`; the terminal record of a
    /// walk has no move and prints `-` for the last three fields.
    pub fn trace(
        &mut self,
        index: Option<&BigUint>,
        partition: &str,
        epsilon: Sign,
        mv: Option<&Move>,
    ) -> io::Result<()> {
        let index_text = index.map_or("-".to_string(), BigUint::to_string);
        let text = match mv {
            Some(m) => format!(
                "{index_text} {partition} {epsilon} {} {} {}",
                m.rule, m.action, m.level
            ),
            None => format!("{index_text} {partition} {epsilon} - - -"),
        };
        let mut obj = Map::new();
        if let Some(k) = index {
            obj.insert("index".into(), big_number(k));
        }
        obj.insert("partition".into(), partition.into());
        obj.insert("epsilon".into(), json!(epsilon.as_i8()));
        if let Some(m) = mv {
            obj.insert("rule".into(), m.rule.to_string().into());
            obj.insert("action".into(), m.action.to_string().into());
            obj.insert("level".into(), json!(m.level));
        }
        self.record(text, Value::Object(obj))
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// A JSON number with all the digits of `k`.
pub fn big_number(k: &BigUint) -> Value {
    Value::Number(
        k.to_string()
            .parse::<Number>()
            .expect("decimal digits form a JSON number"),
    )
}
