class Temp {
  constructor(celsius) {
    this.celsius = celsius;
  }
  static fromF(f) {
    return new Temp((f - 32) * 5 / 9);
  }
  isFreezing() {
    return this.celsius <= 0;
  }
}
var t = Temp.fromF(32);
log(t.celsius);
log(t.isFreezing());
log(Temp.fromF(212).celsius);
log(new Temp(20).isFreezing());
