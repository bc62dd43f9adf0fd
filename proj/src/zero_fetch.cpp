#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <curl/curl.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "efl/errors.hpp"
#include "efl/zeros.hpp"

namespace efl {
namespace {

std::atomic<std::uint64_t> g_network_ops{0};

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) fail(ErrorKind::IoError, fmt::format("cannot open lock file {}", path.string()));
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fail(ErrorKind::IoError, fmt::format("cannot lock {}", path.string()));
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::size_t write_body(char* data, std::size_t size, std::size_t n, void* user) {
  static_cast<std::string*>(user)->append(data, size * n);
  return size * n;
}

std::string download(const std::string& url) {
  static const bool initialized = [] { return curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK; }();
  if (!initialized) fail(ErrorKind::NetworkError, "libcurl initialization failed");
  CURL* h = curl_easy_init();
  if (!h) fail(ErrorKind::NetworkError, "curl_easy_init failed");
  std::string body;
  char errbuf[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(h, CURLOPT_URL, url.c_str());
  curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, write_body);
  curl_easy_setopt(h, CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(h, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(h, CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(h, CURLOPT_ERRORBUFFER, errbuf);
  ++g_network_ops;
  const CURLcode rc = curl_easy_perform(h);
  curl_easy_cleanup(h);
  if (rc != CURLE_OK) {
    fail(ErrorKind::NetworkError, fmt::format("fetching {}: {}", url, errbuf[0] ? errbuf : curl_easy_strerror(rc)));
  }
  return body;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomically(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += fmt::format(".tmp{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::IoError, fmt::format("cannot write {}", tmp.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::IoError, fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string url_basename(const std::string& url) {
  std::string tail = url.substr(url.find_last_of('/') + 1);
  tail = tail.substr(0, tail.find_first_of("?#"));
  std::string clean;
  for (char c : tail) clean += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_') ? c : '_';
  return clean.empty() ? "zeros" : clean;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::IoError, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_all(path)); }

std::uint64_t network_operation_count() { return g_network_ops.load(); }

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("EFL_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "efl";
  return std::filesystem::temp_directory_path() / "efl-cache";
}

FetchResult fetch_zeros(const std::string& url, const std::filesystem::path& cache_dir, const FetchOptions& opts) {
  if (url.empty()) fail(ErrorKind::InvalidArgument, "fetch_zeros needs a URL");
  const auto tables = cache_dir / "zeros";
  const auto index = cache_dir / "index";
  std::filesystem::create_directories(tables);
  std::filesystem::create_directories(index);
  const std::string key = sha256_hex(url);
  FileLock lock(index / (key + ".lock"));
  const auto pointer = index / (key + ".path");

  FetchResult result;
  if (std::filesystem::exists(pointer)) {
    std::string name = read_all(pointer);
    while (!name.empty() && (name.back() == '\n' || name.back() == ' ')) name.pop_back();
    const auto cached = tables / name;
    const std::string expected = name.substr(0, name.find('-'));
    if (std::filesystem::exists(cached)) {
      const std::string actual = sha256_file(cached);
      if (actual == expected) {
        result.path = cached;
        result.digest = actual;
        result.from_cache = true;
        return result;
      }
      if (!opts.redownload_on_mismatch) {
        fail(ErrorKind::DigestMismatch, fmt::format("{}: content digest {} does not match its name", cached.string(), actual));
      }
      std::filesystem::remove(cached);
      result.recovered_from_mismatch = true;
    }
  }

  const std::string body = download(url);
  parse_zeros(body, ZeroSource::fetched, url);
  const std::string digest = sha256_hex(body);
  const std::string name = digest + "-" + url_basename(url);
  const auto target = tables / name;
  if (!std::filesystem::exists(target) || sha256_file(target) != digest) write_atomically(target, body);
  write_atomically(pointer, name + "\n");
  result.path = target;
  result.digest = digest;
  return result;
}

}  // namespace efl
