use serde_json::Value;

/// Buffered report records, each with a JSON and a text form.
#[derive(Default)]
pub struct Out {
    records: Vec<(Value, String)>,
    failures: usize,
}

impl Out {
    pub fn push(&mut self, json: Value, text: impl Into<String>) {
        self.records.push((json, text.into()));
    }

    /// A record that counts `failed` failing checks toward the exit status.
    pub fn push_check(&mut self, json: Value, text: impl Into<String>, failed: usize) {
        self.failures += failed;
        self.push(json, text);
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn finish(&self, text: bool) -> String {
        let mut s = String::new();
        for (json, t) in &self.records {
            if text {
                s.push_str(t);
            } else {
                s.push_str(&serde_json::to_string(json).expect("json"));
            }
            s.push('\n');
        }
        s
    }
}
