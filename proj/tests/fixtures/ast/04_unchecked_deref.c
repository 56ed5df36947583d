int read_first(int *xs) {
  return *xs;
}
