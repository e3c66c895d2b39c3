// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

namespace sdc {

// HTTP session service for interactive anonymization. Datasets are stored
// under <data_dir>/datasets/<id>/{data.csv,schema.json}; each session's
// operation log is written through to <data_dir>/sessions/<id>.json and
// replayed on start. Route and payload field names are listed in
// docs/api.md.
class Service {
 public:
  explicit Service(std::string data_dir);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Returns the bound port, or -1 on failure.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sdc
