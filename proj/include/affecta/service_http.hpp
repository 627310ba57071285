#pragma once

#include <memory>
#include <string>

#include "affecta/service.hpp"

namespace httplib {
class Server;
}

namespace affecta {

struct HttpOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds any free port
  std::string ui_dir;  // served statically at / when set
};

/// HTTP/JSON transport for ServiceCore. Responses carry the core's status
/// code and JSON body unchanged.
class HttpService {
 public:
  HttpService(ServiceCore& core, HttpOptions options);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds the socket and returns the port; throws std::runtime_error on failure.
  int bind();
  /// Blocks serving requests until stop() is called.
  void serve();
  void stop();

 private:
  ServiceCore& core_;
  HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace affecta
