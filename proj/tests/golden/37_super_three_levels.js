class A {
  constructor() {
    this.trail = "A";
  }
  who() {
    return "A";
  }
}
class B extends A {
  constructor() {
    super();
    this.trail = this.trail + "B";
  }
  who() {
    return super.who() + "B";
  }
}
class C extends B {
  constructor() {
    super();
    this.trail = this.trail + "C";
  }
  who() {
    return super.who() + "C";
  }
}
var c = new C();
log(c.trail);
log(c.who());
