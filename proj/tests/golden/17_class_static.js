class Registry {
  constructor(id) {
    this.id = id;
  }
  static describe() {
    return "registry";
  }
  static open(id) {
    return new Registry(id);
  }
}
log(Registry.describe());
var r = Registry.open(7);
log(r.id);
