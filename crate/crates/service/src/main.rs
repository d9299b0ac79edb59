//! `barvec-service [ADDR]`: serves the `/v1` API, by default on
//! 127.0.0.1:8080. `BARVEC_CORS_ORIGIN` restricts CORS to one origin.

use barvec_service::{router, Config};

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let addr = std::env::args().nth(1).unwrap_or_else(|| "127.0.0.1:8080".into());
    let config = Config {
        cors_origin: std::env::var("BARVEC_CORS_ORIGIN").ok(),
        ..Config::default()
    };
    let listener = tokio::net::TcpListener::bind(&addr).await?;
    eprintln!("listening on http://{}/v1", listener.local_addr()?);
    axum::serve(listener, router(config)).await
}
