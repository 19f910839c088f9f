#pragma once

// Local JSON-over-HTTP service for the explorer UI and scripts. Stateless
// apart from the table of asynchronous solve jobs.

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <stop_token>
#include <string>
#include <thread>

#include <httplib.h>

#include "no3theta/json_io.hpp"

namespace no3theta {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8765;
  int max_n = kDefaultMaterializeCap;
  int workers = 2;
};

class Service {
 public:
  explicit Service(ServiceConfig cfg) : cfg_(std::move(cfg)), slots_(std::max(1, cfg_.workers)) {
    // httplib's default also sets SO_REUSEPORT, which lets a second server
    // share a busy port silently.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
    routes();
  }

  ~Service() {
    stop();
    std::map<std::string, std::unique_ptr<Job>> jobs;
    {
      std::lock_guard lock(jobs_mutex_);
      for (auto& [id, job] : jobs_) job->thread.request_stop();
      jobs.swap(jobs_);
    }
    // Job destructors join their threads.
  }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the configured port (0 picks a free one). Returns the bound port;
  /// throws Refused if the port is busy.
  int bind() {
    int port = cfg_.port;
    if (port == 0) {
      port = server_.bind_to_any_port(cfg_.host);
      if (port < 0) throw Refused("could not bind any port on " + cfg_.host);
    } else if (!server_.bind_to_port(cfg_.host, port)) {
      throw Refused("could not bind " + cfg_.host + ":" + std::to_string(port));
    }
    return port;
  }

  /// Serves until stop(). Call bind() first.
  bool listen() { return server_.listen_after_bind(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  void stop() { server_.stop(); }

 private:
  using json = io::json;

  struct Job {
    std::mutex mutex;
    std::string status = "queued";
    json result;
    std::jthread thread;  // declared last: joined before the fields above die
  };

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(io::dump(body), "application/json");
  }

  static void send_error(httplib::Response& res, int status, const std::string& code, const std::string& msg) {
    send(res, status, io::error_json(code, msg));
  }

  // Maps engine errors onto 4xx responses.
  template <class Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const NotPeaceful& e) {
      json body = io::error_json(e.code(), e.what());
      body["witness"] = io::to_json(e.witness());
      send(res, 422, body);
    } catch (const Refused& e) {
      send_error(res, 422, e.code(), e.what());
    } catch (const UnsupportedParameter& e) {
      send_error(res, 422, e.code(), e.what());
    } catch (const LemmaInapplicable& e) {
      send_error(res, 422, e.code(), e.what());
    } catch (const Error& e) {
      send_error(res, 400, e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "parse_error", e.what());
    }
  }

  GridDim checked_dim(int n) const {
    const GridDim dim(n);
    if (n > cfg_.max_n) {
      throw Refused("n=" + std::to_string(n) + " exceeds the service cap of " + std::to_string(cfg_.max_n));
    }
    return dim;
  }

  static json parse_body(const httplib::Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON body: ") + e.what());
    }
  }

  static std::string theta_field(const json& body) {
    if (!body.contains("theta") || !body["theta"].is_string()) throw ParseError("request needs a string 'theta'");
    return body["theta"].get<std::string>();
  }

  static std::string query(const httplib::Request& req, const std::string& key) {
    if (!req.has_param(key)) throw ParseError("missing query parameter '" + key + "'");
    return req.get_param_value(key);
  }

  static int query_int(const httplib::Request& req, const std::string& key) {
    const std::string v = query(req, key);
    try {
      std::size_t used = 0;
      const int out = std::stoi(v, &used);
      if (used == v.size()) return out;
    } catch (const std::logic_error&) {
    }
    throw ParseError("query parameter '" + key + "' must be an integer, got '" + v + "'");
  }

  Construction body_construction(const json& body) const {
    const Construction c = io::construction_from_json(body);
    checked_dim(c.dim().n());
    return c;
  }

  void routes() {
    server_.Post("/api/verify", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = parse_body(req);
        const Construction c = body_construction(body);
        const AngleSpec theta = parse_theta(theta_field(body));
        std::optional<std::size_t> limit;
        if (body.contains("limit")) limit = body["limit"].get<std::size_t>();
        send(res, 200, io::verify_json(c, theta, verify(c, theta, limit)));
      });
    });

    server_.Post("/api/blocked", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = parse_body(req);
        const Construction c = body_construction(body);
        const AngleSpec theta = parse_theta(theta_field(body));
        send(res, 200, io::blocked_json(c, theta, blocked_cells(c, theta)));
      });
    });

    server_.Get("/api/bounds", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const GridDim dim = checked_dim(query_int(req, "n"));
        send(res, 200, io::bounds_json(parse_theta(query(req, "theta")), dim));
      });
    });

    server_.Get("/api/construct", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string kind = query(req, "kind");
        if (kind == "two-rows") {
          const bool transpose = req.has_param("transpose") && req.get_param_value("transpose") == "true";
          send(res, 200, io::to_json(two_rows(checked_dim(query_int(req, "n")), transpose)));
        } else if (kind == "witness") {
          const Witness w = witness(parse_theta(query(req, "theta")));
          checked_dim(w.dim.n());
          send(res, 200, io::witness_json(w));
        } else {
          send_error(res, 400, "unknown_kind", "kind must be 'two-rows' or 'witness', got '" + kind + "'");
        }
      });
    });

    server_.Post("/api/solve", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = parse_body(req);
        if (!body.contains("n") || !body["n"].is_number_integer()) throw ParseError("request needs an integer 'n'");
        const GridDim dim = checked_dim(body["n"].get<int>());
        const AngleSpec theta = parse_theta(theta_field(body));
        SearchConfig cfg;
        cfg.mode = parse_search_mode(body.value("mode", std::string("exact")));
        cfg.rng_seed = body.value("seed", std::uint64_t{0});
        cfg.symmetry_breaking = body.value("symmetry", true);
        cfg.greedy_restarts = body.value("restarts", cfg.greedy_restarts);
        if (body.contains("budget_nodes")) cfg.node_budget = body["budget_nodes"].get<std::uint64_t>();
        if (body.contains("budget_seconds")) {
          cfg.time_budget = std::chrono::milliseconds(
              static_cast<long long>(body["budget_seconds"].get<double>() * 1000.0));
        }
        if (cfg.mode == SearchMode::Oracle) require_oracle_size(dim, cfg.oracle_max_n);
        const std::string id = start_job(dim, theta, cfg);
        send(res, 202, json{{"id", id}, {"status", "queued"}});
      });
    });

    server_.Get("/api/solve/:id", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(jobs_mutex_);
      auto it = jobs_.find(req.path_params.at("id"));
      if (it == jobs_.end()) return send_error(res, 404, "unknown_job", "no solve job with that id");
      std::lock_guard job_lock(it->second->mutex);
      json body{{"id", it->first}, {"status", it->second->status}};
      if (!it->second->result.is_null()) body["result"] = it->second->result;
      send(res, 200, body);
    });

    server_.Delete("/api/solve/:id", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(jobs_mutex_);
      auto it = jobs_.find(req.path_params.at("id"));
      if (it == jobs_.end()) return send_error(res, 404, "unknown_job", "no solve job with that id");
      it->second->thread.request_stop();
      std::lock_guard job_lock(it->second->mutex);
      send(res, 200, json{{"id", it->first}, {"status", it->second->status}, {"cancel_requested", true}});
    });
  }

  std::string start_job(GridDim dim, AngleSpec theta, SearchConfig cfg) {
    std::lock_guard lock(jobs_mutex_);
    const std::string id = "job-" + std::to_string(++next_job_);
    auto job = std::make_unique<Job>();
    Job* raw = job.get();
    job->thread = std::jthread([this, raw, dim, theta, cfg](std::stop_token stop) {
      while (!slots_.try_acquire_for(std::chrono::milliseconds(20))) {
        if (stop.stop_requested()) {
          std::lock_guard l(raw->mutex);
          raw->status = "cancelled";
          return;
        }
      }
      {
        std::lock_guard l(raw->mutex);
        raw->status = "running";
      }
      json result;
      std::string status = "done";
      try {
        const SolveReport report = solve(dim, theta, cfg, stop);
        result = io::solve_json(theta, report);
        if (report.stop_reason == "cancelled") status = "cancelled";
      } catch (const std::exception& e) {
        result = io::error_json("solve_failed", e.what());
        status = "failed";
      }
      slots_.release();
      std::lock_guard l(raw->mutex);
      raw->result = std::move(result);
      raw->status = status;
    });
    jobs_.emplace(id, std::move(job));
    return id;
  }

  ServiceConfig cfg_;
  httplib::Server server_;
  std::counting_semaphore<1024> slots_;
  std::mutex jobs_mutex_;
  std::map<std::string, std::unique_ptr<Job>> jobs_;
  std::uint64_t next_job_ = 0;
};

}  // namespace no3theta
