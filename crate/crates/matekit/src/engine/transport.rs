//! Line-oriented duplex transports underneath an engine session.
//!
//! `ProcessTransport` talks to a child process over stdin/stdout; a reader
//! thread feeds a channel so receives can time out. `TranscriptTransport`
//! replays a recorded conversation and verifies every outgoing command byte
//! for byte, which keeps protocol tests hermetic — no engine binary needed.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::process::{Child, Command, Stdio};
use std::sync::mpsc;
use std::time::Duration;

use super::EngineError;

/// A newline-delimited bidirectional text channel.
pub trait Transport: Send {
    fn send_line(&mut self, line: &str) -> Result<(), EngineError>;
    fn recv_line(&mut self, timeout: Duration) -> Result<String, EngineError>;
    /// Best-effort teardown; called when the session is dropped.
    fn shutdown(&mut self) {}
}

/// Transport over a spawned engine process.
pub struct ProcessTransport {
    child: Child,
    stdin: std::process::ChildStdin,
    lines: mpsc::Receiver<std::io::Result<String>>,
}

impl ProcessTransport {
    /// Spawns `command`, split on whitespace into program and arguments.
    pub fn spawn(command: &str) -> Result<ProcessTransport, EngineError> {
        let mut parts = command.split_whitespace();
        let program = parts.next().ok_or_else(|| EngineError::Spawn {
            command: command.to_string(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidInput, "empty command"),
        })?;
        let mut child = Command::new(program)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|source| EngineError::Spawn { command: command.to_string(), source })?;
        let stdin = child.stdin.take().expect("stdin piped");
        let stdout = child.stdout.take().expect("stdout piped");
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            let reader = BufReader::new(stdout);
            for line in reader.lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(ProcessTransport { child, stdin, lines: rx })
    }
}

impl Transport for ProcessTransport {
    fn send_line(&mut self, line: &str) -> Result<(), EngineError> {
        self.stdin.write_all(line.as_bytes())?;
        self.stdin.write_all(b"\n")?;
        self.stdin.flush()?;
        Ok(())
    }

    fn recv_line(&mut self, timeout: Duration) -> Result<String, EngineError> {
        match self.lines.recv_timeout(timeout) {
            Ok(Ok(line)) => Ok(line),
            Ok(Err(e)) => Err(EngineError::Io(e)),
            Err(mpsc::RecvTimeoutError::Timeout) => Err(EngineError::Timeout),
            Err(mpsc::RecvTimeoutError::Disconnected) => Err(EngineError::Closed),
        }
    }

    fn shutdown(&mut self) {
        let _ = self.stdin.write_all(b"quit\n");
        let _ = self.stdin.flush();
        std::thread::sleep(Duration::from_millis(20));
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

impl Drop for ProcessTransport {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// One step of a recorded conversation.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    /// A command the client is expected to send, byte for byte.
    Expect(String),
    /// A line the engine replies with.
    Reply(String),
}

/// Replays a transcript: outgoing commands must match the recorded `>` lines
/// exactly and in order; `<` lines are served as engine output.
///
/// Transcript format, one step per line:
///
/// ```text
/// # comment
/// > uci
/// < id name scripted
/// < uciok
/// > isready
/// < readyok
/// ```
pub struct TranscriptTransport {
    steps: Vec<Step>,
    cursor: usize,
}

impl TranscriptTransport {
    pub fn from_str(script: &str) -> TranscriptTransport {
        let steps = script
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                if let Some(rest) = l.strip_prefix('>') {
                    Step::Expect(rest.trim_start().to_string())
                } else if let Some(rest) = l.strip_prefix('<') {
                    Step::Reply(rest.trim_start().to_string())
                } else {
                    // Bare lines read as engine output, so hand-written
                    // scripts can omit the `<` marker.
                    Step::Reply(l.to_string())
                }
            })
            .collect();
        TranscriptTransport { steps, cursor: 0 }
    }

    pub fn from_path(path: &Path) -> Result<TranscriptTransport, EngineError> {
        let text = std::fs::read_to_string(path)?;
        Ok(TranscriptTransport::from_str(&text))
    }

    /// True when every step of the script has been consumed.
    pub fn exhausted(&self) -> bool {
        self.cursor >= self.steps.len()
    }
}

impl Transport for TranscriptTransport {
    fn send_line(&mut self, line: &str) -> Result<(), EngineError> {
        match self.steps.get(self.cursor) {
            Some(Step::Expect(expected)) if expected == line => {
                self.cursor += 1;
                Ok(())
            }
            Some(Step::Expect(expected)) => Err(EngineError::Desync {
                expected: expected.clone(),
                sent: line.to_string(),
            }),
            Some(Step::Reply(reply)) => Err(EngineError::Desync {
                expected: format!("(engine reply) {reply}"),
                sent: line.to_string(),
            }),
            None => Err(EngineError::Desync {
                expected: "(end of transcript)".to_string(),
                sent: line.to_string(),
            }),
        }
    }

    fn recv_line(&mut self, _timeout: Duration) -> Result<String, EngineError> {
        match self.steps.get(self.cursor) {
            Some(Step::Reply(line)) => {
                self.cursor += 1;
                Ok(line.clone())
            }
            // The script has no reply queued here: the scripted engine stays
            // silent, which a live session would experience as a timeout.
            Some(Step::Expect(_)) | None => Err(EngineError::Timeout),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCRIPT: &str = "\
# trivial handshake
> uci
< id name scripted
< uciok
> isready
< readyok
";

    #[test]
    fn replays_in_order() {
        let mut t = TranscriptTransport::from_str(SCRIPT);
        t.send_line("uci").unwrap();
        assert_eq!(t.recv_line(Duration::from_secs(1)).unwrap(), "id name scripted");
        assert_eq!(t.recv_line(Duration::from_secs(1)).unwrap(), "uciok");
        t.send_line("isready").unwrap();
        assert_eq!(t.recv_line(Duration::from_secs(1)).unwrap(), "readyok");
        assert!(t.exhausted());
    }

    #[test]
    fn rejects_out_of_order_commands() {
        let mut t = TranscriptTransport::from_str(SCRIPT);
        let err = t.send_line("isready").unwrap_err();
        match err {
            EngineError::Desync { expected, sent } => {
                assert_eq!(expected, "uci");
                assert_eq!(sent, "isready");
            }
            other => panic!("expected desync, got {other:?}"),
        }
    }

    #[test]
    fn silence_reads_as_timeout() {
        let mut t = TranscriptTransport::from_str("> uci\n> isready\n");
        t.send_line("uci").unwrap();
        assert!(matches!(t.recv_line(Duration::from_millis(1)), Err(EngineError::Timeout)));
    }
}
