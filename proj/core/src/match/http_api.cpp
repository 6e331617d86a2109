#include "collabrec/match/http_api.hpp"

#include <chrono>
#include <iostream>
#include <thread>

#include <httplib.h>

#include "collabrec/error.hpp"

namespace collabrec::match {
namespace {

using nlohmann::json;

int status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return 400;
    case ErrorKind::unauthorized: return 401;
    case ErrorKind::forbidden: return 403;
    case ErrorKind::not_found: return 404;
    case ErrorKind::conflict: return 409;
    case ErrorKind::runtime: return 500;
  }
  return 500;
}

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::unauthorized: return "unauthorized";
    case ErrorKind::forbidden: return "forbidden";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::runtime: return "internal";
  }
  return "internal";
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw validation_error("request body must be a JSON object");
  return body;
}

std::string string_field(const json& body, const char* name, bool required = true) {
  auto it = body.find(name);
  if (it == body.end() || it->is_null()) {
    if (required) throw validation_error(std::string("missing field '") + name + "'");
    return {};
  }
  if (!it->is_string()) throw validation_error(std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

double experience_field(const json& body) {
  auto it = body.find("experience");
  if (it == body.end() || it->is_null()) return 0.0;
  if (it->is_number()) return it->get<double>();
  if (it->is_string()) {
    const auto text = it->get<std::string>();
    std::size_t used = 0;
    try {
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw validation_error("field 'experience' must be a number");
}

long long integer_param(const std::string& text, const char* name) {
  std::size_t used = 0;
  try {
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw validation_error(std::string("query parameter '") + name + "' must be an integer");
}

json public_profile(const corpus::Profile& p) {
  return {{"id", p.id},
          {"name", p.name},
          {"profession", p.profession},
          {"experience", p.experience},
          {"interest", p.interest},
          {"collaboration_with", p.collaboration_with},
          {"domain", p.domain},
          {"skillset", p.skillset}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

struct HttpApi::Impl {
  MatchService& service;
  HttpOptions options;
  httplib::Server server;
  std::thread thread;
  int port = -1;

  Impl(MatchService& s, HttpOptions o) : service(s), options(std::move(o)) {
    if (!options.log) options.log = [](const std::string& line) { std::cerr << line << '\n'; };
    // httplib also sets SO_REUSEPORT by default, which hides a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
    routes();
  }

  std::string viewer(const httplib::Request& req) {
    const auto header = req.get_header_value("Authorization");
    constexpr std::string_view scheme = "Bearer ";
    if (header.size() <= scheme.size() || header.compare(0, scheme.size(), scheme) != 0) {
      throw Error(ErrorKind::unauthorized, "missing bearer token");
    }
    return service.authenticate(std::string_view(header).substr(scheme.size()));
  }

  // Runs a handler, mapping exceptions onto JSON error responses.
  template <typename F>
  httplib::Server::Handler guarded(F f) {
    return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        reply(res, status_of(e.kind()), {{"error", error_name(e.kind())}, {"message", e.what()}});
      } catch (const json::exception& e) {
        reply(res, 400, {{"error", "validation"}, {"message", e.what()}});
      } catch (const std::exception& e) {
        reply(res, 500, {{"error", "internal"}, {"message", e.what()}});
      }
    };
  }

  void routes() {
    server.Get("/healthz", guarded([](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"status", "ok"}});
    }));

    server.Post("/profiles", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      corpus::Profile p;
      p.name = string_field(body, "name", false);
      p.email = string_field(body, "email");
      p.profession = string_field(body, "profession", false);
      p.experience = experience_field(body);
      p.interest = string_field(body, "interest", false);
      p.collaboration_with = string_field(body, "collaboration_with", false);
      p.domain = string_field(body, "domain");
      p.skillset = string_field(body, "skillset");
      const auto password = string_field(body, "password");
      const auto account = service.register_account(std::move(p), password);
      reply(res, 201, {{"id", account.profile_id}});
    }));

    server.Post("/auth/login", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto session = service.login(string_field(body, "email"), string_field(body, "password"));
      reply(res, 200, {{"token", session.token}, {"token_type", "Bearer"}, {"expires_at", session.expires_at}});
    }));

    server.Get(R"(/profiles/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      viewer(req);
      const auto id = req.matches[1].str();
      auto p = service.profile(id);
      if (!p) throw Error(ErrorKind::not_found, "unknown profile " + id);
      auto body = public_profile(*p);
      auto ledger = service.ratings(id);
      body["rating"] = ledger ? json(ledger->average) : json(nullptr);
      body["rating_count"] = ledger ? ledger->ratings.size() : 0;
      reply(res, 200, body);
    }));

    server.Get("/feed", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      long long k = 5;
      if (req.has_param("k")) k = integer_param(req.get_param_value("k"), "k");
      if (k < 1) throw validation_error("k must be positive");
      json out = json::array();
      for (const auto& e : service.feed(me, static_cast<std::size_t>(k))) {
        out.push_back({{"candidate", public_profile(e.candidate)},
                       {"similarity", e.similarity},
                       {"rating", optional_number(e.rating)},
                       {"summary", e.summary}});
      }
      reply(res, 200, out);
    }));

    server.Post("/swipes", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      const auto body = parse_body(req);
      const auto record = service.swipe(me, string_field(body, "target"),
                                        parse_direction(string_field(body, "direction")));
      reply(res, 200, {{"matched", record.matched}, {"match_id", record.id()}});
    }));

    server.Get("/matches", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      json out = json::array();
      for (const auto& m : service.matches(me)) {
        out.push_back({{"match_id", m.match_id}, {"other_user", m.other_user}, {"matched_at", m.matched_at}});
      }
      reply(res, 200, out);
    }));

    server.Post(R"(/matches/([^/]+)/messages)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      const auto body = parse_body(req);
      const auto message = service.send_message(me, req.matches[1].str(), string_field(body, "text"));
      reply(res, 201, message);
    }));

    server.Get(R"(/matches/([^/]+)/messages)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      std::optional<std::int64_t> since;
      if (req.has_param("since")) since = integer_param(req.get_param_value("since"), "since");
      reply(res, 200, service.messages(me, req.matches[1].str(), since));
    }));

    server.Post("/ratings", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto me = viewer(req);
      const auto body = parse_body(req);
      auto score = body.find("score");
      if (score == body.end() || !score->is_number_integer()) throw validation_error("score must be an integer");
      const auto value = score->get<long long>();
      if (value < 1 || value > 5) throw validation_error("score must be an integer from 1 to 5");
      const double average = service.rate(me, string_field(body, "target"), static_cast<int>(value));
      reply(res, 200, {{"average", average}});
    }));

    if (options.cors_origin) {
      const auto origin = *options.cors_origin;
      server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      });
      server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        reply(res, res.status, {{"error", res.status == 404 ? "not_found" : "error"}, {"message", httplib::status_message(res.status)}});
      }
    });

    server.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      const auto ts = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::system_clock::now().time_since_epoch()).count();
      options.log(json{{"ts", ts},
                       {"method", req.method},
                       {"path", req.path},
                       {"status", res.status},
                       {"remote", req.remote_addr}}
                      .dump());
    });
  }
};

HttpApi::HttpApi(MatchService& service, HttpOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpApi::~HttpApi() { stop(); }

int HttpApi::bind() {
  if (impl_->port >= 0) return impl_->port;
  if (impl_->options.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->options.host);
  } else if (impl_->server.bind_to_port(impl_->options.host, impl_->options.port)) {
    impl_->port = impl_->options.port;
  }
  if (impl_->port <= 0) {
    impl_->port = -1;
    throw runtime_error("cannot bind " + impl_->options.host + ":" + std::to_string(impl_->options.port));
  }
  return impl_->port;
}

void HttpApi::listen() {
  bind();
  impl_->server.listen_after_bind();
}

int HttpApi::start() {
  const int p = bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return p;
}

void HttpApi::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpApi::port() const noexcept { return impl_->port; }

}  // namespace collabrec::match
