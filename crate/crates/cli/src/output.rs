use serde_json::{Map, Value};

/// Exit status contract: 0 holds or built, 1 fails with a witness, 2 usage
/// or structural error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Error,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Error => 2,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Error => "error",
        }
    }
}

/// A command's report: text lines plus a JSON mirror.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub json: Map<String, Value>,
}

impl Outcome {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), command.into());
        Outcome { status: Status::Holds, lines: Vec::new(), json }
    }

    pub fn error(command: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        let mut out = Outcome::new(command);
        out.status = Status::Error;
        out.lines.push(format!("error: {message}"));
        out.set("error", message);
        out
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.json.insert(key.into(), value.into());
    }

    /// Downgrades to `Fails` unless already an error.
    pub fn fail(&mut self) {
        if self.status == Status::Holds {
            self.status = Status::Fails;
        }
    }

    pub fn code(&self) -> i32 {
        self.status.code()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut map = self.json.clone();
            map.insert("status".into(), self.status.tag().into());
            map.insert("exit".into(), self.code().into());
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json values serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}
