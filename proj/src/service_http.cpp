#include "affecta/service_http.hpp"

#include <stdexcept>

#include <httplib.h>

namespace affecta {

HttpService::HttpService(ServiceCore& core, HttpOptions options)
    : core_(core), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const ServiceResponse r = core_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post(R"(/session(/.*)?)", forward);
  server_->Get(R"(/session/.*)", forward);

  if (!options_.ui_dir.empty() && !server_->set_mount_point("/", options_.ui_dir)) {
    throw std::runtime_error("ui directory '" + options_.ui_dir + "' does not exist");
  }
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (options_.port == 0) {
    const int port = server_->bind_to_any_port(options_.host);
    if (port < 0) throw std::runtime_error("cannot bind " + options_.host);
    options_.port = port;
    return port;
  }
  if (!server_->bind_to_port(options_.host, options_.port)) {
    throw std::runtime_error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  return options_.port;
}

void HttpService::serve() { server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

}  // namespace affecta
