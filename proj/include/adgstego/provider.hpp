// Copyright 2026 The adgstego Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// External language-model providers.
//
// Wire protocol, one JSON object per line in each direction:
//
//   request  {"context":[2,17,408]}
//   reply    {"ids":[3,17,9],"probs":[0.5,0.3,0.2]}
//
// Probabilities are quantized on this side, so the two ends of a stego
// channel only need the provider to be deterministic, not their floating
// point to agree.

#ifndef ADGSTEGO_PROVIDER_HPP
#define ADGSTEGO_PROVIDER_HPP

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgstego/common.hpp"
#include "adgstego/distribution.hpp"
#include "adgstego/language_model.hpp"

namespace adgstego::lm {

/// Line-oriented duplex channel.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void write_line(std::string_view line) = 0;
  /// Next line without its terminator. Throws ProviderError on timeout or
  /// end of stream.
  virtual std::string read_line(std::chrono::milliseconds timeout) = 0;
};

/// Transport over a pair of file descriptors, optionally owning a child
/// process that is reaped on destruction.
class FdTransport final : public Transport {
 public:
  FdTransport(int read_fd, int write_fd, pid_t child = -1) : read_fd_(read_fd), write_fd_(write_fd), child_(child) {}
  FdTransport(const FdTransport&) = delete;
  FdTransport& operator=(const FdTransport&) = delete;

  ~FdTransport() override {
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    if (child_ > 0) {
      int status = 0;
      if (::waitpid(child_, &status, WNOHANG) == 0) {
        ::kill(child_, SIGTERM);
        ::waitpid(child_, &status, 0);
      }
    }
  }

  void write_line(std::string_view line) override {
    std::string buf(line);
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      const ssize_t n = ::send(write_fd_, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      if (n < 0 && errno == ENOTSOCK) {
        const ssize_t w = ::write(write_fd_, buf.data() + off, buf.size() - off);
        if (w < 0) {
          if (errno == EINTR) continue;
          throw ProviderError(std::string("provider write failed: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(w);
        continue;
      }
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProviderError(std::string("provider write failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line(std::chrono::milliseconds timeout) override {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw ProviderError("provider timed out");
      pollfd pfd{read_fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw ProviderError(std::string("provider poll failed: ") + std::strerror(errno));
      }
      if (ready == 0) throw ProviderError("provider timed out");
      char chunk[4096];
      const ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProviderError(std::string("provider read failed: ") + std::strerror(errno));
      }
      if (n == 0) throw ProviderError("provider closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int read_fd_;
  int write_fd_;
  pid_t child_;
  std::string buffer_;
};

/// Runs `command` through /bin/sh and talks to it over its stdin/stdout.
/// SIGPIPE is ignored process-wide so a dying provider surfaces as a
/// ProviderError rather than killing the caller.
inline std::unique_ptr<Transport> spawn_provider(const std::string& command) {
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2];
  int from_child[2];
  if (::pipe(to_child) != 0) throw ProviderError("pipe() failed");
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw ProviderError("pipe() failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) throw ProviderError("fork() failed");
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::make_unique<FdTransport>(from_child[0], to_child[1], pid);
}

/// Connects to a provider listening on host:port.
inline std::unique_ptr<Transport> connect_provider(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw ProviderError("cannot resolve provider " + host + ":" + service + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw ProviderError("cannot connect to provider " + host + ":" + service);
  return std::make_unique<FdTransport>(fd, fd);
}

inline std::string encode_request(std::span<const TokenId> context) {
  nlohmann::json j;
  j["context"] = std::vector<TokenId>(context.begin(), context.end());
  return j.dump();
}

/// Parses and quantizes one provider reply. Any defect is a ProviderError.
inline ConditionalDistribution decode_reply(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed provider reply: ") + e.what());
  }
  if (!j.is_object() || !j.contains("ids") || !j.contains("probs") || !j["ids"].is_array() ||
      !j["probs"].is_array()) {
    throw ProviderError("malformed provider reply: expected {\"ids\":[...],\"probs\":[...]}");
  }
  const auto& ids_j = j["ids"];
  const auto& probs_j = j["probs"];
  if (ids_j.size() != probs_j.size() || ids_j.empty()) {
    throw ProviderError("malformed provider reply: ids and probs must be non-empty and equally long");
  }
  std::vector<TokenId> ids;
  std::vector<double> probs;
  ids.reserve(ids_j.size());
  probs.reserve(probs_j.size());
  for (const auto& v : ids_j) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xFFFFFFFFULL) {
      throw ProviderError("malformed provider reply: ids must be unsigned 32-bit integers");
    }
    ids.push_back(v.get<TokenId>());
  }
  for (const auto& v : probs_j) {
    if (!v.is_number()) throw ProviderError("malformed provider reply: probs must be numbers");
    const double p = v.get<double>();
    if (!std::isfinite(p)) throw ProviderError("malformed provider reply: non-finite probability");
    probs.push_back(p);
  }
  try {
    return ConditionalDistribution::from_probabilities(ids, probs);
  } catch (const Error& e) {
    throw ProviderError(std::string("unusable provider reply: ") + e.what());
  }
}

/// LanguageModel backed by an external process or server.
class ProviderModel final : public LanguageModel {
 public:
  explicit ProviderModel(std::unique_ptr<Transport> transport,
                         std::chrono::milliseconds timeout = std::chrono::milliseconds(10000))
      : transport_(std::move(transport)), timeout_(timeout) {}

  ConditionalDistribution next_distribution(std::span<const TokenId> context) override {
    if (context.empty() || context.front() != kBosId) {
      throw PreconditionError("next_distribution: context must start with BOS");
    }
    transport_->write_line(encode_request(context));
    return decode_reply(transport_->read_line(timeout_));
  }

 private:
  std::unique_ptr<Transport> transport_;
  std::chrono::milliseconds timeout_;
};

}  // namespace adgstego::lm

#endif  // ADGSTEGO_PROVIDER_HPP
