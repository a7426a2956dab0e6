use std::fmt::Write as _;

use serde_json::Value;

/// What a command prints, in both output modes, and how it exits.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    pub fn new() -> Self {
        Report {
            text: String::new(),
            json: Value::Null,
            code: 0,
        }
    }

    pub fn line(&mut self, args: std::fmt::Arguments<'_>) {
        self.text.write_fmt(args).expect("writing to a String");
        self.text.push('\n');
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serialising a JSON value");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

#[macro_export]
macro_rules! outln {
    ($report:expr, $($arg:tt)*) => {
        $report.line(format_args!($($arg)*))
    };
}
