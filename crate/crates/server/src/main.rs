use clap::Parser;
use polarmap_server::ops::BaseLimits;

/// Exact polar-map computations as an HTTP/JSON service.
#[derive(Parser, Debug)]
#[command(name = "polarmapd", version, about)]
struct Args {
    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    addr: String,
    /// Port to bind; 0 picks an ephemeral port.
    #[arg(long, default_value_t = 8787)]
    port: u16,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| "info".into()),
        )
        .init();
    let args = Args::parse();
    let listener = tokio::net::TcpListener::bind((args.addr.as_str(), args.port)).await?;
    tracing::info!("polarmapd listening on {}", listener.local_addr()?);
    polarmap_server::serve(listener, BaseLimits::from_env()).await
}
