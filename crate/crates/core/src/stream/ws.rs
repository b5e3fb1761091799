use std::net::SocketAddr;

use futures_util::{SinkExt, StreamExt};
use tokio::net::{TcpListener, TcpStream};
use tokio::sync::oneshot;
use tokio::task::{JoinHandle, JoinSet};
use tokio_tungstenite::tungstenite::handshake::server::{ErrorResponse, Request, Response};
use tokio_tungstenite::tungstenite::http::StatusCode;
use tokio_tungstenite::tungstenite::Message;

use super::hub::{Hub, HubHandle};
use super::protocol::ServerMessage;
use super::StreamError;

pub const STREAM_PATH: &str = "/stream";

/// A bound WebSocket endpoint in front of a [`Hub`].
pub struct Server {
    local_addr: SocketAddr,
    hub: Hub,
    stop: oneshot::Sender<()>,
    accept: JoinHandle<()>,
}

impl Server {
    pub fn local_addr(&self) -> SocketAddr {
        self.local_addr
    }

    pub fn url(&self) -> String {
        format!("ws://{}{}", self.local_addr, STREAM_PATH)
    }

    pub fn hub(&self) -> HubHandle {
        self.hub.handle()
    }

    /// Sends END to every client, then waits for their sockets to flush.
    pub async fn shutdown(self) {
        self.hub.shutdown().await;
        let _ = self.stop.send(());
        let _ = self.accept.await;
    }
}

pub async fn serve(hub: Hub, addr: &str) -> Result<Server, StreamError> {
    let listener = TcpListener::bind(addr)
        .await
        .map_err(|source| StreamError::Bind { addr: addr.to_string(), source })?;
    let local_addr = listener.local_addr().map_err(StreamError::Io)?;
    let (stop, mut stopped) = oneshot::channel();
    let handle = hub.handle();
    let accept = tokio::spawn(async move {
        let mut conns = JoinSet::new();
        loop {
            tokio::select! {
                _ = &mut stopped => break,
                accepted = listener.accept() => match accepted {
                    Ok((tcp, peer)) => {
                        conns.spawn(connection(tcp, peer, handle.clone()));
                    }
                    Err(e) => tracing::warn!("accept failed: {e}"),
                },
            }
        }
        while conns.join_next().await.is_some() {}
    });
    tracing::info!("serving on ws://{local_addr}{STREAM_PATH}");
    Ok(Server { local_addr, hub, stop, accept })
}

#[allow(clippy::result_large_err)]
async fn connection(tcp: TcpStream, peer: SocketAddr, hub: HubHandle) {
    let check_path = |req: &Request, resp: Response| -> Result<Response, ErrorResponse> {
        if req.uri().path() == STREAM_PATH {
            Ok(resp)
        } else {
            let mut err = ErrorResponse::new(Some(format!("no endpoint at {}", req.uri().path())));
            *err.status_mut() = StatusCode::NOT_FOUND;
            Err(err)
        }
    };
    let ws = match tokio_tungstenite::accept_hdr_async(tcp, check_path).await {
        Ok(ws) => ws,
        Err(e) => {
            tracing::debug!(%peer, "handshake failed: {e}");
            return;
        }
    };
    let (mut sink, mut source) = ws.split();
    let mut conn = hub.connect();
    tracing::debug!(%peer, client = conn.id(), "websocket open");
    loop {
        tokio::select! {
            out = conn.recv() => {
                let Some(msg) = out else { break };
                let end = matches!(msg, ServerMessage::End);
                let text = String::from_utf8(msg.encode()).expect("canonical JSON is UTF-8");
                if sink.send(Message::Text(text)).await.is_err() {
                    return;
                }
                if end {
                    break;
                }
            }
            incoming = source.next() => match incoming {
                Some(Ok(Message::Text(text))) => conn.submit(text.as_bytes()),
                Some(Ok(Message::Binary(bytes))) => conn.submit(&bytes),
                Some(Ok(Message::Close(_))) | None | Some(Err(_)) => return,
                Some(Ok(_)) => {}
            },
        }
    }
    let _ = sink.close().await;
}
