//! Wire protocol and broadcast server.
//!
//! Messages are JSON objects with a `type` field. The server side is a
//! [`Hub`] that drives one shared session; [`serve`] exposes it over
//! WebSocket at `/stream`, and [`LoopbackClient`] speaks the same encoded
//! protocol in-process.

mod hub;
mod protocol;
mod ws;

pub use hub::{Connection, Hub, HubHandle, Pacing};
pub use protocol::{ClientCommand, DatasetSummary, DecodeError, ServerMessage};
pub use ws::{serve, Server, STREAM_PATH};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("cannot bind {addr}: {source}")]
    Bind { addr: String, source: std::io::Error },
    #[error(transparent)]
    Io(std::io::Error),
}

impl StreamError {
    pub fn code(&self) -> &'static str {
        match self {
            StreamError::Bind { .. } => "BIND_FAILURE",
            StreamError::Io(_) => "IO_ERROR",
        }
    }
}

/// In-process client. Every message crosses the hub as encoded bytes, so it
/// sees exactly what a WebSocket client would.
pub struct LoopbackClient {
    conn: Connection,
}

impl LoopbackClient {
    pub fn connect(hub: &HubHandle) -> Self {
        LoopbackClient { conn: hub.connect() }
    }

    pub fn send(&self, cmd: &ClientCommand) {
        self.conn.submit(&cmd.encode());
    }

    pub fn send_raw(&self, bytes: &[u8]) {
        self.conn.submit(bytes);
    }

    pub async fn recv(&mut self) -> Option<ServerMessage> {
        let msg = self.conn.recv().await?;
        Some(ServerMessage::decode(&msg.encode()).expect("server output decodes"))
    }

    /// Receives until a message matches `pred`, returning everything seen.
    pub async fn recv_until(
        &mut self,
        mut pred: impl FnMut(&ServerMessage) -> bool,
    ) -> Vec<ServerMessage> {
        let mut seen = Vec::new();
        while let Some(msg) = self.recv().await {
            let hit = pred(&msg);
            seen.push(msg);
            if hit {
                break;
            }
        }
        seen
    }
}
