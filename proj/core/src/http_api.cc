#include <atomic>
#include <mutex>

#include <httplib.h>

#include "ramsey/service.h"

namespace ramsey {

namespace {

std::mutex server_mu;
httplib::Server* active = nullptr;

void bind(httplib::Server& server, GameService& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      target += '?';
      bool first = true;
      for (const auto& [k, v] : req.params) {
        if (!first) target += '&';
        first = false;
        target += k + "=" + v;
      }
    }
    HttpResponse out = service.handle(req.method, target, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(R"(/api/.*)", forward);
  server.Post(R"(/api/.*)", forward);
  server.Put(R"(/api/.*)", forward);
  server.Delete(R"(/api/.*)", forward);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

}  // namespace

bool run_http_server(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  bind(server, service);
  {
    std::lock_guard<std::mutex> lock(server_mu);
    active = &server;
  }
  bool ok = server.listen(host, port);
  std::lock_guard<std::mutex> lock(server_mu);
  active = nullptr;
  return ok;
}

void stop_http_server() {
  std::lock_guard<std::mutex> lock(server_mu);
  if (active) active->stop();
}

}  // namespace ramsey
