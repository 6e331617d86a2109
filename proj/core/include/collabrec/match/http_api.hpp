#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "collabrec/match/service.hpp"

namespace collabrec::match {

struct HttpOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  /// When set, CORS headers allowing this origin are added and OPTIONS
  /// preflights are answered.
  std::optional<std::string> cors_origin;
  /// Receives one JSON object per request: ts, method, path, status, remote.
  /// Defaults to a line on stderr.
  std::function<void(const std::string&)> log;
};

/// JSON over HTTP front end for a MatchService.
///
///   POST /profiles                   201 {id}
///   POST /auth/login                 200 {token, token_type, expires_at}
///   GET  /profiles/{id}              200 profile summary with rating
///   GET  /feed?k=5                   200 [{candidate, similarity, rating, summary}]
///   POST /swipes                     200 {matched, match_id}
///   GET  /matches                    200 [{match_id, other_user, matched_at}]
///   POST /matches/{id}/messages      201 message
///   GET  /matches/{id}/messages      200 [message], optional ?since=<ts>
///   POST /ratings                    200 {average}
///   GET  /healthz                    200 {status}
///
/// Every route except /profiles (POST), /auth/login and /healthz needs
/// "Authorization: Bearer <token>". Errors carry {error, message} with
/// status 400, 401, 403, 404 or 409.
class HttpApi {
 public:
  HttpApi(MatchService& service, HttpOptions options);
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  /// Binds the socket and returns the bound port. Throws a runtime Error
  /// when the address is unavailable.
  int bind();
  /// Serves on the bound socket until stop(). Binds first if needed.
  void listen();
  /// bind() plus listen() on a background thread; returns the port.
  int start();
  void stop();
  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace collabrec::match
