void twice(int *p) {
  {
    *p = *p * 2;
  }
}
