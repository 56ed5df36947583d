int open_session(int fd) {
  char *buf = malloc(64);
  if (fd < 0) {
    free(buf);
    return -1;
  }
  free(buf);
  return 0;
}
